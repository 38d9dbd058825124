//! Algebraic invariants checked on random inputs drawn from seeded generators.

mod common;

use common::*;
use lie_normal_form::document::load_problem;
use lie_normal_form::formal::{
    bracket, compose_maps, invert_map, pushforward, star, FormalMap, FormalVectorField, Series,
};
use lie_normal_form::lie::{
    canonical_forms, roots_of_radical, simultaneous_triangularize, validate_input, Decomposition, LieProblem,
    LinearForm, NonlinearRep,
};
use lie_normal_form::linalg::{complete_basis, Matrix};
use lie_normal_form::normal_form::{homological_step, normalize_full, NormalizeOptions};
use lie_normal_form::resonance::{resonance_sets, resonance_vector_violation};
use lie_normal_form::straighten::{build_flow_map, straighten};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn load(name: &str) -> LieProblem {
    load_problem(&std::fs::read_to_string(corpus_dir().join(name)).unwrap(), None).unwrap().0
}

/// Terms of degree `≤ t` of a field.
fn low_terms(f: &FormalVectorField, t: usize) -> Vec<(String, Gr)> {
    f.iter().filter(|(a, _, _)| a.degree() <= t).map(|(a, i, c)| (format!("{a}/{i}"), c.clone())).collect()
}

/// Commuting fields `χ_* c_j` for a random frame `c` and random map `χ`.
fn commuting_fields(r: &mut impl Rng, n: usize, p: usize, k: usize) -> (Vec<FormalVectorField>, Matrix) {
    let basis = random_invertible(r, n);
    let chi = random_invertible_map(r, n, k + 1);
    let fields = (0..p)
        .map(|j| {
            let c = FormalVectorField::constant(n, k + 1, &basis.column(j));
            pushforward(&c, &chi).unwrap().truncate(k).with_trusted(k)
        })
        .collect();
    (fields, basis)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn scalar_field_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (scalar(&mut r), scalar(&mut r), scalar(&mut r));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Gr::one());
        }
    }

    #[test]
    fn scalar_print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = scalar(&mut r);
        let text = a.to_string();
        let back: Gr = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let v = random_field(&mut r, n, 5, 4);
        let w = random_field(&mut r, n, 5, 4);
        let z = random_field(&mut r, n, 5, 4);
        let vw = bracket(&v, &w).unwrap();
        let wv = bracket(&w, &v).unwrap();
        let t = vw.trusted().min(wv.trusted());
        prop_assert!(vw.add(&wv).truncate(t).is_zero());
        let j = bracket(&vw, &z).unwrap()
            .add(&bracket(&bracket(&w, &z).unwrap(), &v).unwrap())
            .add(&bracket(&bracket(&z, &v).unwrap(), &w).unwrap());
        prop_assert!(j.truncate(j.trusted()).is_zero(), "Jacobi residue {}", j.render());
    }

    #[test]
    fn star_matches_differentiation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let v = random_field(&mut r, n, 5, 4);
        let w = random_field(&mut r, n, 5, 4);
        let s = star(&v, &w).unwrap();
        prop_assert!(series_agree_to(&s.components(), &star_oracle(&v, &w), s.trusted()));
    }

    #[test]
    fn inversion_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let phi = random_invertible_map(&mut r, n, 5);
        let inv = invert_map(&phi).unwrap();
        for m in [compose_maps(&phi, &inv).unwrap(), compose_maps(&inv, &phi).unwrap()] {
            prop_assert!(m.trusted() >= 5);
            prop_assert!(m.is_identity());
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn pushforward_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let t = random_field(&mut r, n, 4, 4).truncate(4).with_trusted(5);
        let phi = random_invertible_map(&mut r, n, 5);
        let psi = random_invertible_map(&mut r, n, 5);
        let twice = pushforward(&pushforward(&t, &phi).unwrap(), &psi).unwrap();
        let once = pushforward(&t, &compose_maps(&psi, &phi).unwrap()).unwrap();
        let k = twice.trusted().min(once.trusted());
        prop_assert_eq!(low_terms(&twice, k), low_terms(&once, k));
    }

    #[test]
    fn pushforward_preserves_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let v = random_field(&mut r, n, 4, 3).truncate(4).with_trusted(5);
        let w = random_field(&mut r, n, 4, 3).truncate(4).with_trusted(5);
        let phi = random_invertible_map(&mut r, n, 5);
        let lhs = pushforward(&bracket(&v, &w).unwrap(), &phi).unwrap();
        let rhs = bracket(&pushforward(&v, &phi).unwrap(), &pushforward(&w, &phi).unwrap()).unwrap();
        let k = lhs.trusted().min(rhs.trusted());
        prop_assert_eq!(low_terms(&lhs, k), low_terms(&rhs, k));
    }

    #[test]
    fn straightening_gives_constants_linear_in_the_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = 4;
        let n = r.gen_range(2..=3);
        let p = r.gen_range(1..=n);
        let (fields, _) = commuting_fields(&mut r, n, p, k);
        let rep = NonlinearRep::new(n, k, fields.clone()).unwrap();
        let st = straighten(&rep, &Decomposition { m: (0..p).collect(), ..Default::default() }).unwrap();
        for (j, f) in fields.iter().enumerate() {
            let pushed = pushforward(f, &st.phi).unwrap();
            prop_assert!(pushed.terms().keys().all(|key| key.degree() == 0));
            prop_assert_eq!(pushed.constant_vector()[..p].to_vec(), st.a_matrix.column(j));
        }
        let c = nonzero_scalar(&mut r);
        let comb = fields[0].scale(&c).add(&fields[p - 1]);
        let pushed = pushforward(&comb, &st.phi).unwrap();
        let want: Vec<Gr> = st.a_matrix.column(0).iter().zip(st.a_matrix.column(p - 1))
            .map(|(a, b)| &(&c * a) + &b)
            .collect();
        prop_assert!(pushed.terms().keys().all(|key| key.degree() == 0));
        prop_assert_eq!(pushed.constant_vector()[..p].to_vec(), want);
    }

    #[test]
    fn flow_map_is_independent_of_factor_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = 4;
        let (fields, _) = commuting_fields(&mut r, 3, 2, k);
        let frame: Vec<Vec<Gr>> = fields.iter().map(FormalVectorField::constant_vector).collect();
        let section = complete_basis(3, &frame);
        let psi = build_flow_map(&fields, &section, k).unwrap();
        let swapped = build_flow_map(&[fields[1].clone(), fields[0].clone()], &section, k).unwrap();
        let perm = FormalMap::linear(&Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), k);
        let relabeled = compose_maps(&psi, &perm).unwrap();
        let t = (k - 1).min(relabeled.trusted()).min(swapped.trusted());
        prop_assert!(series_agree_to(relabeled.components(), swapped.components(), t));
    }

    #[test]
    fn triangularization_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let b = random_invertible(&mut r, n);
        let binv = b.inverse().unwrap();
        let mats: Vec<Matrix> = (0..r.gen_range(1..=3))
            .map(|_| {
                let rows = (0..n).map(|i| (0..n).map(|j| if j >= i { scalar(&mut r) } else { Gr::zero() }).collect()).collect();
                b.mul(&Matrix::from_rows(rows)).mul(&binv)
            })
            .collect();
        let tri = simultaneous_triangularize(&mats).unwrap();
        for a in &mats {
            prop_assert!(tri.basis_inverse.mul(a).mul(&tri.basis).is_upper_triangular());
        }
    }

    #[test]
    fn homological_step_is_deterministic_and_solves(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nu = q(r.gen_range(1..=5), r.gen_range(2..=7));
        let nu = if r.gen_bool(0.5) { -nu } else { nu };
        let k = 4;
        let x_terms: Vec<(u32, Gr)> = (2..=k as u32).map(|e| (e, scalar(&mut r))).collect();
        let p = aff1_type(k, nu.clone(), &x_terms, &[]);
        let t = p.rep.field(0).clone();
        let lambda = [q(-1, 1), nu];
        for d in 2..=k {
            let a = homological_step(&t, d, 1, &lambda).unwrap();
            let b = homological_step(&t, d, 1, &lambda).unwrap();
            prop_assert_eq!(a.w.terms(), b.w.terms());
            prop_assert_eq!(a.kernel.terms(), b.kernel.terms());
        }
        // Conjugating degree by degree leaves only the kernel part.
        let mut cur = t;
        for d in 2..=k {
            let step = homological_step(&cur, d, 1, &lambda).unwrap();
            let phi = FormalMap::identity_plus(&step.w, cur.trusted()).unwrap();
            cur = pushforward(&cur, &phi).unwrap();
            let part = cur.degree_part(d);
            prop_assert_eq!(part.terms(), step.kernel.terms());
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn validation_rejects_a_perturbed_structure_constant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let files = corpus_files();
        let path = files.choose(&mut r).unwrap();
        let mut p = load_problem(&std::fs::read_to_string(path).unwrap(), None).unwrap().0;
        prop_assert!(validate_input(&p.algebra, &p.decomposition, &p.rep).passed());
        let dim = p.algebra.dim();
        let (a, b, c) = (r.gen_range(0..dim), r.gen_range(0..dim), r.gen_range(0..dim));
        let v = p.algebra.structure_constant(a, b, c) + &nonzero_scalar(&mut r);
        p.algebra.set_structure_constant(a, b, c, v);
        prop_assert!(!validate_input(&p.algebra, &p.decomposition, &p.rep).passed());
    }

    #[test]
    fn roots_are_invariant_under_basis_permutation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = load(if r.gen_bool(0.5) { "jordan.json" } else { "abelian2.json" });
        let base = roots_of_radical(&p.algebra, &p.decomposition).unwrap();
        let mut order: Vec<usize> = (0..p.decomposition.r.len()).collect();
        order.shuffle(&mut r);
        let d = Decomposition { r: order.iter().map(|&i| p.decomposition.r[i]).collect(), ..p.decomposition.clone() };
        let permuted = roots_of_radical(&p.algebra, &d).unwrap();
        // Coordinate `i` of a permuted form is the value on `r[order[i]]`.
        let relabeled = base.iter().map(|f| LinearForm(order.iter().map(|&i| f.0[i].clone()).collect())).collect();
        prop_assert_eq!(canonical_forms(relabeled), permuted);
    }

    #[test]
    fn scaled_resonance_vector_stays_resonant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let files = corpus_files();
        let path = files.choose(&mut r).unwrap();
        let p = load_problem(&std::fs::read_to_string(path).unwrap(), None).unwrap().0;
        let res = normalize_full(&p, &NormalizeOptions::default()).unwrap();
        if let (Some(spectral), Some(x0)) = (&res.spectral, &res.x0) {
            let c = nonzero_scalar(&mut r);
            let scaled: Vec<Gr> = x0.iter().map(|v| &c * v).collect();
            prop_assert!(resonance_vector_violation(spectral, x0, p.degree()).is_none());
            prop_assert!(resonance_vector_violation(spectral, &scaled, p.degree()).is_none());
            prop_assert_eq!(resonance_sets(spectral, p.degree()), resonance_sets(spectral, p.degree()));
        }
    }
}

#[test]
fn degree_one_flow_of_a_constant_field_is_a_translation() {
    let v = FormalVectorField::constant(2, 3, &[q(1, 1), q(0, 1)]);
    let psi = build_flow_map(&[v], &[vec![q(0, 1), q(1, 1)]], 3).unwrap();
    assert!(psi.is_identity());
    assert_eq!(psi.components()[0], Series::variable(2, 3, 0));
}
