use gkd::exterior::alt::{Alt, Kind};
use gkd::exterior::forms::{bivector_pair, d, del, delbar, euler_homotopy, lie_derivative, sharp};
use gkd::exterior::koszul::{koszul_bracket, mc_residual_dgla, mc_residual_koszul};
use gkd::exterior::multivector::{d_sigma, delbar_n, dgla_bracket, holo_to_n, pi_star, schouten};
use gkd::exterior::{MVElement, MixedForm, Multivector};
use gkd::random;
use gkd::Model;
use proptest::prelude::*;
use rand::Rng;

fn m2() -> Model {
    Model::complex(2)
}

fn sgn(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn times<K: Kind>(a: &Alt<K>, s: i32) -> Alt<K> {
    if s < 0 {
        a.neg()
    } else {
        a.clone()
    }
}

fn form(rng: &mut rand_chacha::ChaCha8Rng, k: u32) -> MixedForm {
    let m = m2();
    random::element(rng, 4, 0b1111, k, &random::coord_vars(&m), 2, 3)
}

fn n_elem(rng: &mut rand_chacha::ChaCha8Rng, k: u32) -> MVElement {
    let m = m2();
    random::element(rng, 4, 0b1111, k, &random::coord_vars(&m), 2, 3)
}

fn sigma(rng: &mut rand_chacha::ChaCha8Rng) -> Multivector {
    random::holo_bivector_c2(rng, &m2(), 2, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>(), k in 0u32..3) {
        let m = m2();
        let mut r = random::rng(seed);
        let a = form(&mut r, k);
        prop_assert!(d(&d(&a)).is_zero());
        prop_assert!(delbar(&m, &delbar(&m, &a)).is_zero());
        prop_assert!(del(&m, &del(&m, &a)).is_zero());
        prop_assert!(del(&m, &delbar(&m, &a)).add(&delbar(&m, &del(&m, &a))).is_zero());
        prop_assert_eq!(del(&m, &a).add(&delbar(&m, &a)), d(&a));
    }

    #[test]
    fn homotopy_identity(seed in any::<u64>(), q in 1u32..3) {
        let m = m2();
        let mut r = random::rng(seed);
        let a: MixedForm = random::element(&mut r, 4, m.anti_mask(), q, &random::coord_vars(&m), 3, 4);
        let lhs = delbar(&m, &euler_homotopy(&m, &a).unwrap()).add(&euler_homotopy(&m, &delbar(&m, &a)).unwrap());
        prop_assert_eq!(lhs, a);
    }

    #[test]
    fn schouten_graded(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let (p, q, s) = (r.gen_range(1..3u32), r.gen_range(1..3u32), r.gen_range(1..3u32));
        let all = 0b1111;
        let vars = random::coord_vars(&m2());
        let a: Multivector = random::element(&mut r, 4, all, p, &vars, 2, 2);
        let b: Multivector = random::element(&mut r, 4, all, q, &vars, 2, 2);
        let c: Multivector = random::element(&mut r, 4, all, s, &vars, 2, 2);
        let e = ((p - 1) * (q - 1)) as i64;
        prop_assert_eq!(schouten(&a, &b), times(&schouten(&b, &a), -sgn(e)));
        let lhs = schouten(&a, &schouten(&b, &c));
        let rhs = schouten(&schouten(&a, &b), &c).add(&times(&schouten(&b, &schouten(&a, &c)), sgn(e)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dgla_graded(seed in any::<u64>()) {
        let m = m2();
        let mut r = random::rng(seed);
        let (p, q, s) = (r.gen_range(1..3u32), r.gen_range(1..3u32), r.gen_range(1..3u32));
        let a = n_elem(&mut r, p);
        let b = n_elem(&mut r, q);
        let c = n_elem(&mut r, s);
        let e = ((p - 1) * (q - 1)) as i64;
        prop_assert_eq!(dgla_bracket(&m, &a, &b), times(&dgla_bracket(&m, &b, &a), -sgn(e)));
        let lhs = dgla_bracket(&m, &a, &dgla_bracket(&m, &b, &c));
        let rhs = dgla_bracket(&m, &dgla_bracket(&m, &a, &b), &c)
            .add(&times(&dgla_bracket(&m, &b, &dgla_bracket(&m, &a, &c)), sgn(e)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_graded(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let s = sigma(&mut r);
        let (p, q, u) = (r.gen_range(0..3u32), r.gen_range(0..3u32), r.gen_range(0..2u32));
        let a = form(&mut r, p);
        let b = form(&mut r, q);
        let c = form(&mut r, u);
        let e = (p as i64 - 1) * (q as i64 - 1);
        prop_assert_eq!(koszul_bracket(&a, &b, &s), times(&koszul_bracket(&b, &a, &s), -sgn(e)));
        let lhs = koszul_bracket(&a, &koszul_bracket(&b, &c, &s), &s);
        let rhs = koszul_bracket(&koszul_bracket(&a, &b, &s), &c, &s)
            .add(&times(&koszul_bracket(&b, &koszul_bracket(&a, &c, &s), &s), sgn(e)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_on_one_forms(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let s = sigma(&mut r);
        let xi = form(&mut r, 1);
        let eta = form(&mut r, 1);
        let oracle = lie_derivative(&sharp(&s, &xi), &eta)
            .sub(&lie_derivative(&sharp(&s, &eta), &xi))
            .sub(&d(&MixedForm::scalar(4, bivector_pair(&s, &xi, &eta))))
            .neg();
        prop_assert_eq!(koszul_bracket(&xi, &eta, &s), oracle);
    }

    #[test]
    fn d_sigma_differential(seed in any::<u64>()) {
        let m = m2();
        let mut r = random::rng(seed);
        let s = holo_to_n(&m, &sigma(&mut r));
        let p = r.gen_range(0..3u32);
        let q = r.gen_range(0..3u32);
        let a = n_elem(&mut r, p);
        let b = n_elem(&mut r, q);
        prop_assert!(d_sigma(&m, &d_sigma(&m, &a, &s), &s).is_zero());
        prop_assert!(delbar_n(&m, &delbar_n(&m, &a)).is_zero());
        let lhs = d_sigma(&m, &dgla_bracket(&m, &a, &b), &s);
        let rhs = dgla_bracket(&m, &d_sigma(&m, &a, &s), &b)
            .add(&times(&dgla_bracket(&m, &a, &d_sigma(&m, &b, &s)), sgn(p as i64 - 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pi_star_morphism(seed in any::<u64>()) {
        let m = m2();
        let mut r = random::rng(seed);
        let s = sigma(&mut r);
        let sn = holo_to_n(&m, &s);
        let p = r.gen_range(0..3u32);
        let q = r.gen_range(0..3u32);
        let a = form(&mut r, p);
        let b = form(&mut r, q);
        prop_assert_eq!(pi_star(&m, &d(&a), &s), d_sigma(&m, &pi_star(&m, &a, &s), &sn));
        prop_assert_eq!(
            pi_star(&m, &koszul_bracket(&a, &b, &s), &s),
            dgla_bracket(&m, &pi_star(&m, &a, &s), &pi_star(&m, &b, &s))
        );
        let w = form(&mut r, 2);
        prop_assert_eq!(
            pi_star(&m, &mc_residual_koszul(&w, &s, None).unwrap(), &s),
            mc_residual_dgla(&m, &pi_star(&m, &w, &s), &sn, None).unwrap()
        );
    }
}
