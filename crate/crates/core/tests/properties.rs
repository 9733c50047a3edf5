use std::sync::Arc;

use frex::{
    linearize, remove_loops, CommutativeFral, CommutativeFrex, Fral, Frex, InvolutiveFral, InvolutiveFrex, MonoidFral,
    MonoidFrex,
};
use frex_kernel::algebras::by_name;
use frex_kernel::{bind, check, replay, Algebra, CheckContext, Derivation, Term, Value};
use frex_oracle::{random_term, TermSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SUPPORT: usize = 3;

fn spec(involutive: bool, pool: Vec<Value>, leaves: usize) -> TermSpec {
    TermSpec {
        support: SUPPORT,
        leaves,
        involutive,
        pool,
    }
}

fn alg(name: &str) -> Arc<dyn Algebra> {
    by_name(name).unwrap()
}

fn pool(a: &dyn Algebra, rng: &mut ChaCha8Rng) -> Vec<Value> {
    (0..4).map(|_| a.sample(rng)).collect()
}

fn env(a: &dyn Algebra, rng: &mut ChaCha8Rng) -> Vec<Value> {
    (0..SUPPORT).map(|_| a.sample(rng)).collect()
}

/// `d` proves `t = reify(norm t)`, and survives flattening, loop removal
/// and replay.
fn proof_pipeline(ctx: &CheckContext, t: &Term, target: &Term, d: &Derivation) -> Result<(), TestCaseError> {
    check(ctx, t, target, d).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let linear = linearize(ctx, d).unwrap();
    let cleaned = remove_loops(ctx, &linear).unwrap();
    prop_assert!(cleaned.steps.len() <= linear.steps.len());
    prop_assert_eq!(&remove_loops(ctx, &cleaned).unwrap(), &cleaned);
    let terms = cleaned.trace(ctx).unwrap();
    prop_assert_eq!(terms.last().unwrap(), target);
    let mut seen = std::collections::HashSet::new();
    prop_assert!(terms.iter().all(|t| seen.insert(t)));
    check(ctx, t, target, &replay(ctx, &cleaned).unwrap()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    Ok(())
}

fn fral_properties<F: Fral>(fral: &F, t: &Term, targets: &[Arc<dyn Algebra>], rng: &mut ChaCha8Rng) -> Result<(), TestCaseError> {
    let (nf, d) = fral.normalize(SUPPORT, t);
    prop_assert_eq!(&fral.norm(SUPPORT, t), &nf);
    let r = fral.reify(&nf);
    prop_assert_eq!(&fral.norm(SUPPORT, &r), &nf);
    let ctx = CheckContext::new(fral.presentation().clone(), SUPPORT, None).unwrap();
    proof_pipeline(&ctx, t, &r, &d)?;
    for target in targets {
        let e = env(target.as_ref(), rng);
        let via_nf = fral.eval_nf(target.as_ref(), &e, &nf);
        prop_assert!(target.equal(&via_nf, &bind(target.as_ref(), &e, t).unwrap()), "{}", target.name());
    }
    Ok(())
}

fn frex_properties<F: Frex>(frex: &F, t: &Term, rng: &mut ChaCha8Rng) -> Result<(), TestCaseError> {
    let base = frex.base().clone();
    let (nf, d) = frex.normalize(SUPPORT, t);
    let r = frex.reify(&nf);
    prop_assert!(frex.nf_equal(&frex.norm(SUPPORT, &r), &nf));
    let ctx = CheckContext::new(frex.presentation().clone(), SUPPORT, Some(base.clone())).unwrap();
    proof_pipeline(&ctx, t, &r, &d)?;
    let e = env(base.as_ref(), rng);
    let via_nf = frex.eval_nf(base.as_ref(), &|c: &Value| c.clone(), &e, &nf);
    prop_assert!(base.equal(&via_nf, &bind(base.as_ref(), &e, t).unwrap()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monoid_fral(seed in any::<u64>(), leaves in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &spec(false, vec![], leaves));
        fral_properties(&MonoidFral::new(), &t, &[alg("mat2"), alg("string")], &mut rng)?;
    }

    #[test]
    fn commutative_fral(seed in any::<u64>(), leaves in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &spec(false, vec![], leaves));
        fral_properties(&CommutativeFral::new(), &t, &[alg("nat-add"), alg("nat-mul")], &mut rng)?;
    }

    #[test]
    fn involutive_fral(seed in any::<u64>(), leaves in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, &spec(true, vec![], leaves));
        fral_properties(&InvolutiveFral::new(), &t, &[alg("list"), alg("string")], &mut rng)?;
    }

    #[test]
    fn monoid_frex(seed in any::<u64>(), leaves in 1usize..12, base in prop::sample::select(vec!["nat-add", "mat2", "string"])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg(base);
        let s = spec(false, pool(a.as_ref(), &mut rng), leaves);
        let t = random_term(&mut rng, &s);
        frex_properties(&MonoidFrex::new(a), &t, &mut rng)?;
    }

    #[test]
    fn commutative_frex(seed in any::<u64>(), leaves in 1usize..12, base in prop::sample::select(vec!["nat-add", "nat-mul"])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg(base);
        let s = spec(false, pool(a.as_ref(), &mut rng), leaves);
        let t = random_term(&mut rng, &s);
        frex_properties(&CommutativeFrex::new(a), &t, &mut rng)?;
    }

    #[test]
    fn involutive_frex(seed in any::<u64>(), leaves in 1usize..12, base in prop::sample::select(vec!["list", "string", "trivial"])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg(base);
        let s = spec(true, pool(a.as_ref(), &mut rng), leaves);
        let t = random_term(&mut rng, &s);
        frex_properties(&InvolutiveFrex::new(a), &t, &mut rng)?;
    }

    #[test]
    fn involution_on_normal_forms(seed in any::<u64>(), leaves in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fral = InvolutiveFral::new();
        let s = spec(true, vec![], leaves);
        let (a, b) = (random_term(&mut rng, &s), random_term(&mut rng, &s));
        let inv = |t: Term| Term::app("inv", vec![t]);
        let mul = |x: Term, y: Term| Term::app("·", vec![x, y]);
        let na = fral.norm(SUPPORT, &a);
        prop_assert_eq!(fral.inv_nf(&fral.inv_nf(&na)), na.clone());
        prop_assert_eq!(fral.norm(SUPPORT, &inv(a.clone())), fral.inv_nf(&na));
        prop_assert_eq!(
            fral.norm(SUPPORT, &inv(mul(a.clone(), b.clone()))),
            fral.norm(SUPPORT, &mul(inv(b.clone()), inv(a.clone())))
        );

        let string = alg("string");
        let frex = InvolutiveFrex::new(string.clone());
        let s = spec(true, pool(string.as_ref(), &mut rng), leaves);
        let c = random_term(&mut rng, &s);
        let nc = frex.norm(SUPPORT, &c);
        prop_assert!(frex.nf_equal(&frex.inv_nf(&frex.inv_nf(&nc)), &nc));
        prop_assert!(frex.nf_equal(&frex.norm(SUPPORT, &inv(c)), &frex.inv_nf(&nc)));
    }
}
