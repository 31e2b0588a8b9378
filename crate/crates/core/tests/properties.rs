use proptest::prelude::*;

use qmock_core::divisor::sigma;
use qmock_core::gls::{verify_gls, GlsInstance};
use qmock_core::lambert::{bilateral_sum, bilateral_sum_extended, BilateralSpec};
use qmock_core::verify::{clear_with, registry, Params};
use qmock_core::{rat, Error, Monomial, Rational, XTarget};

fn monomial(c: i64, x: bool, q: i64) -> Monomial {
    Monomial::new(Rational::from(c), x as i64, q)
}

/// `c·x^δ·q^m` with `c ∈ {±1, ±2}`, `1 ≤ |m| ≤ 4`.
fn param(x: bool) -> impl Strategy<Value = Monomial> {
    (prop::sample::select(vec![-2i64, -1, 1, 2]), prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4]))
        .prop_map(move |(c, m)| monomial(c, x, m))
}

/// Nothing in `[b_i]` or `[b_j / b_i]` vanishes identically.
fn non_degenerate(b: &[Monomial]) -> bool {
    let unit = |m: &Monomial| m.xdeg == 0 && m.coeff == Rational::one();
    b.iter().all(|x| !unit(x))
        && b.iter().enumerate().all(|(i, x)| b.iter().skip(i + 1).all(|y| x.xdeg != y.xdeg || x.coeff != y.coeff))
}

fn gls_instance() -> impl Strategy<Value = GlsInstance> {
    let shape = prop::sample::select(vec![(0usize, 2usize), (0, 3), (1, 2), (1, 3), (2, 3)]);
    (shape, prop::option::of(0usize..5))
        .prop_flat_map(|((r, s), xslot)| {
            let slots: Vec<BoxedStrategy<Monomial>> = (0..r + s).map(|i| param(xslot == Some(i)).boxed()).collect();
            slots.prop_map(move |v| GlsInstance::new(v[..r].to_vec(), v[r..].to_vec()))
        })
        .prop_filter("degenerate", |inst| non_degenerate(&inst.b))
}

fn lambert_spec() -> impl Strategy<Value = BilateralSpec> {
    (
        1i64..4,
        -4i64..5,
        -3i64..4,
        any::<bool>(),
        prop::sample::select(vec![rat(-1, 1), rat(2, 1), rat(-1, 2), rat(3, 1)]),
        0i64..2,
        -3i64..4,
        1i64..4,
        1u32..3,
    )
        .prop_map(|(a, b, c, alt, bc, bx, bq, step, p)| {
            let mut s = BilateralSpec::quad(a, b, c).weight(1, 2).denom(Monomial::new(bc, bx, bq), step, p);
            if alt {
                s = s.alternating();
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generalized_lambert_identity_holds(inst in gls_instance()) {
        let rep = verify_gls(&inst, 30);
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn specializing_the_formal_parameter_keeps_the_identity(
        inst in gls_instance(),
        sign in prop::sample::select(vec![-1i64, 1]),
        m in 1i64..4,
    ) {
        let spec = |p: &Monomial| {
            if p.xdeg == 0 {
                p.clone()
            } else {
                Monomial::new(&p.coeff * &Rational::from(sign), 0, p.qexp + m)
            }
        };
        let uni = GlsInstance::new(inst.a.iter().map(spec).collect(), inst.b.iter().map(spec).collect());
        prop_assume!(non_degenerate(&uni.b));
        let rep = verify_gls(&uni, 30);
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn widening_the_index_cutoff_changes_nothing(spec in lambert_spec(), order in 10i64..40) {
        let base = bilateral_sum(&spec, order);
        prop_assume!(!matches!(base, Err(Error::ExactPole(_))));
        let wide = bilateral_sum_extended(&spec, order, 5).unwrap();
        let base = base.unwrap();
        prop_assert_eq!(&base.poles, &wide.poles);
        prop_assert!(base.num.first_mismatch(&wide.num, order).is_none());
    }

    #[test]
    fn passing_identities_pass_at_lower_orders(idx in 0usize..64, order in 4i64..25) {
        let entries = registry();
        let e = &entries[idx % entries.len()];
        let p = &e.instances[idx % e.instances.len()];
        let rep = e.verify(p, order).unwrap();
        prop_assert!(rep.passed(), "{} {:?} at {}: {:?}", e.name, p, order, rep.first_mismatch);
    }
}

#[test]
fn eisenstein_coefficients_are_divisor_sums() {
    let spec = BilateralSpec::quad(0, 1, 0).denom(Monomial::one(), 1, 2).from(1);
    let s = bilateral_sum(&spec, 501).unwrap().num;
    for n in 1..=500 {
        assert_eq!(s.rational_at(n).unwrap(), Rational::from(sigma(&Rational::from(n)) as i64), "n = {n}");
    }
}

#[test]
fn cleared_sides_agree_after_specializing_x() {
    let order = 24;
    let mut checked = 0;
    for e in registry().iter().filter(|e| e.bivariate) {
        for p in &e.instances {
            let id = e.identity(p).unwrap();
            let (l, r) = (id.lhs.eval(order).unwrap(), id.rhs.eval(order).unwrap());
            let c = clear_with(&l, &r, &id.clearing).unwrap();
            for m in 1..=3 {
                let t = XTarget::q_power(-1, m);
                let (Ok(a), Ok(b)) = (c.lhs.subst_x(t), c.rhs.subst_x(t)) else { continue };
                let upto = a.order().min(b.order()).min(c.lhs.order()).min(c.rhs.order());
                if upto <= 0 {
                    continue;
                }
                assert!(a.first_mismatch(&b, upto).is_none(), "{} {p:?} at x = -q^{m}", e.name);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn unknown_parameters_are_rejected() {
    let e = registry().iter().find(|e| e.name == "idt5").unwrap();
    assert!(e.identity(&Params::new()).is_err());
}
