use dbrauer::bm::{bm_pairing, pullback, AbsoluteForm, AdelicPoint, AffinePatch, LocalPoint, MFrac};
use dbrauer::brauer_local::{local_invariant, one_minus_c, solve_one_minus_c};
use dbrauer::cartier::{bn_member, cartier};
use dbrauer::ff::{Fq, FqElem};
use dbrauer::global::{
    local_expand, rational_reconstruct, residue_sum, tate_global_test, AdelicForm, Place,
    TateVerdict,
};
use dbrauer::poly::Poly;
use dbrauer::series::{Form, LaurentSeries, LocalForm, RationalFunction};
use dbrauer::witt::{d_n, WittVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u32, usize); 5] = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)];

fn field(i: usize) -> Fq {
    let (p, k) = FIELDS[i % FIELDS.len()];
    Fq::new(p, k).unwrap()
}

fn elem(f: Fq, rng: &mut ChaCha8Rng) -> FqElem {
    f.from_encoding(rng.random_range(0..f.order()))
}

fn nonzero(f: Fq, rng: &mut ChaCha8Rng) -> FqElem {
    f.from_encoding(rng.random_range(1..f.order()))
}

fn series(f: Fq, rng: &mut ChaCha8Rng, prec: i64) -> LaurentSeries {
    let lo = rng.random_range(-6..=2);
    LaurentSeries::random(f, lo, prec, rng)
}

fn unit(f: Fq, rng: &mut ChaCha8Rng, prec: i64) -> LaurentSeries {
    &LaurentSeries::random(f, 1, prec, rng) + &LaurentSeries::constant(nonzero(f, rng))
}

fn poly(f: Fq, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs(f, (0..=deg).map(|_| elem(f, rng)).collect())
}

fn rational(f: Fq, rng: &mut ChaCha8Rng, deg: usize) -> RationalFunction {
    let mut den = poly(f, rng.random_range(0..=deg), rng);
    if den.is_zero() {
        den = Poly::one(f);
    }
    RationalFunction::new(poly(f, rng.random_range(0..=deg), rng), den).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_is_linear_and_surjective(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (elem(f, &mut rng), elem(f, &mut rng));
        let c = rng.random_range(0..f.p() as i64);
        prop_assert_eq!((a + f.from_int(c) * b).trace(), (a.trace() + c as u32 * b.trace()) % f.p());
        let image: std::collections::BTreeSet<u32> = f.elements().map(|x| x.trace()).collect();
        prop_assert_eq!(image.len(), f.p() as usize);
    }

    #[test]
    fn p_power_decomposition_recombines(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = series(f, &mut rng, 40);
        let parts = s.p_power_decompose();
        prop_assert_eq!(parts.len(), f.p() as usize);
        let mut acc = LaurentSeries::exact_zero(f);
        for (j, g) in parts.iter().enumerate() {
            acc = &acc + &g.frobenius().shift(j as i64);
        }
        prop_assert!(acc.prec() >= s.prec());
        prop_assert!(acc.agrees_with(&s));
    }

    #[test]
    fn calculus_identities(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = series(f, &mut rng, 40);
        if let Ok(int) = s.integrate() {
            prop_assert!(int.derivative().agrees_with(&s));
        }
        prop_assert!(s.derivative().residue().unwrap().is_zero());
        prop_assert!(s.frobenius().derivative().is_zero());
    }

    #[test]
    fn double_window_rerun(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let wide_a = series(f, &mut rng, 80);
        let wide_b = unit(f, &mut rng, 80).shift(rng.random_range(-3..=3));
        let (a, b) = (wide_a.truncate(40), wide_b.truncate(40));
        prop_assert!((&a * &b).agrees_with(&(&wide_a * &wide_b)));
        prop_assert!(b.inv(200).unwrap().agrees_with(&wide_b.inv(200).unwrap()));
        let sub_w = (&LaurentSeries::t(f) * &unit(f, &mut rng, 80)).truncate(80);
        let sub_n = sub_w.truncate(40);
        prop_assert!(a.compose(&sub_n, 200).unwrap().agrees_with(&wide_a.compose(&sub_w, 200).unwrap()));
        if let (Ok(c), Ok(cw)) = (cartier(&Form::new(a.clone())), cartier(&Form::new(wide_a.clone()))) {
            prop_assert!(c.coeff().agrees_with(cw.coeff()));
        }
    }

    #[test]
    fn bn_tower(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3]), n in 1usize..3) {
        let f = Fq::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<LaurentSeries> = (0..n)
            .map(|_| {
                let terms: Vec<_> = (-2..=2).map(|e| (e, elem(f, &mut rng))).collect();
                LaurentSeries::from_terms(f, &terms)
            })
            .collect();
        let w = d_n(&WittVector::new(v).unwrap());
        prop_assert!(bn_member(&w, n).unwrap().value);
        let x = Form::new(series(f, &mut rng, 200));
        if bn_member(&x, n).unwrap().value {
            prop_assert!(bn_member(&x, n + 1).unwrap().value);
        }
        prop_assert!(bn_member(&w, n + 1).unwrap().value);
    }

    #[test]
    fn brauer_sequence(i in 0usize..3, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: LocalForm = Form::new(series(f, &mut rng, 64));
        // forward inclusion
        let image = one_minus_c(&w).unwrap();
        prop_assert!(local_invariant(&image).unwrap().is_zero());
        // exactness on a random form
        let solved = solve_one_minus_c(&w).unwrap();
        prop_assert_eq!(solved.is_some(), local_invariant(&w).unwrap().is_zero());
    }

    #[test]
    fn invariant_laws(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = series(f, &mut rng, 48);
        let g = unit(f, &mut rng, 48).shift(rng.random_range(-3..=3));
        let h = unit(f, &mut rng, 48).shift(rng.random_range(-3..=3));
        let inv_of = |u: &LaurentSeries| {
            let w = LocalForm::dlog(u, 48).unwrap().scale(&a);
            local_invariant(&w).unwrap()
        };
        prop_assert_eq!(inv_of(&(&g * &h)), inv_of(&g) + inv_of(&h));
        // (b^p - b) dlog t with b integral
        let b = LaurentSeries::random(f, 0, 30, &mut rng);
        let w = LocalForm::dlog_t(f).scale(&(&b.frobenius() - &b));
        prop_assert!(local_invariant(&w).unwrap().is_zero());
    }

    #[test]
    fn reciprocity(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Form::new(rational(f, &mut rng, 6));
        prop_assert!(residue_sum(&w).unwrap().is_zero());
    }

    #[test]
    fn diagonal_adelic_forms_pass(i in 0usize..3, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Form::new(rational(f, &mut rng, 3));
        let mut places = vec![Place::infinity(f), Place::random(f, 2, &mut rng)];
        let extra = Place::random(f, 2, &mut rng);
        if !places.contains(&extra) {
            places.push(extra);
        }
        let a = AdelicForm::diagonal(&w, &places, 48).unwrap();
        let trials: Vec<RationalFunction> = (0..6).map(|_| rational(f, &mut rng, 2)).collect();
        let verdict = tate_global_test(&a, &trials).unwrap();
        prop_assert!(matches!(verdict, TateVerdict::PassedAllTrials { .. }), "{}", verdict);
    }

    #[test]
    fn reconstruct_inverts_expansion(i in 0usize..5, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rational(f, &mut rng, 4);
        let s = local_expand(&r, &Place::at(f.zero()), 24).unwrap();
        let back = rational_reconstruct(&s, 4, 4);
        prop_assert_eq!(back, Some(r));
    }

    #[test]
    fn reparametrized_points(i in 0usize..3, seed in any::<u64>()) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let line = AffinePatch::affine_line(f);
        let x = MFrac::var(0, f, 1);
        let a = MFrac::constant(RationalFunction::constant(nonzero(f, &mut rng)), 1)
            .add(&x.mul(&x).mul(&MFrac::constant(RationalFunction::constant(elem(f, &mut rng)), 1)));
        let omega = AbsoluteForm::dx(&line, 0).scale(&a);
        let v = Place::at(f.zero());
        let xs = LaurentSeries::random(f, 0, 40, &mut rng);
        let sigma = &LaurentSeries::t(f) * &unit(f, &mut rng, 40);
        let base = pullback(&omega, &LocalPoint::new(v.clone(), vec![xs.clone()]).unwrap()).unwrap();
        let moved = pullback(
            &omega,
            &LocalPoint::new(v.clone(), vec![xs.compose(&sigma, 40).unwrap()]).unwrap(),
        )
        .unwrap();
        let transported = &base.coeff().compose(&sigma, 40).unwrap() * &sigma.derivative();
        prop_assert!(moved.coeff().agrees_with(&transported));
        // p-th power points kill vertical forms
        let pth = LocalPoint::new(v, vec![xs.frobenius()]).unwrap();
        let w = omega.scale(&MFrac::constant(rational(f, &mut rng, 2), 1));
        prop_assert!(pullback(&w, &pth).map(|z| z.is_zero()).unwrap_or(true));
    }

    #[test]
    fn level_zero_pairing_is_linear(seed in any::<u64>()) {
        let f = Fq::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let line = AffinePatch::affine_line(f);
        let x = MFrac::var(0, f, 1);
        let omega = AbsoluteForm::dx(&line, 0).scale(&x).add(&AbsoluteForm::dt(&line));
        let xs = LaurentSeries::random(f, -2, 60, &mut rng);
        let point = AdelicPoint::new(vec![RationalFunction::t(f)])
            .with(LocalPoint::new(Place::at(f.zero()), vec![xs]).unwrap());
        let (m1, m2) = (
            RationalFunction::t_power(f, rng.random_range(-4..=4)),
            RationalFunction::t_power(f, rng.random_range(-4..=4)),
        );
        let s = bm_pairing(&omega, &point, 0, &(&m1 + &m2)).unwrap();
        let parts = bm_pairing(&omega, &point, 0, &m1).unwrap() + bm_pairing(&omega, &point, 0, &m2).unwrap();
        prop_assert_eq!(s, parts % 3);
    }
}
