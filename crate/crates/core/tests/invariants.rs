use std::collections::{BTreeSet, HashSet};

use complexlab::asymptotics::{beta_profile, lower_critical_dimension, zero_spread_criterion, ExponentProfile};
use complexlab::combinatorics::binomial;
use complexlab::duality::{dual_c, dual_prime, nerve_of_maximal};
use complexlab::homology::{betti, Field};
use complexlab::measures::{lower_measure, upper_measure};
use complexlab::{Ambient, Complex, ParamMap, Simplex};
use proptest::prelude::*;

/// A hypergraph in `∂Δ_n`: random masks with the full vertex set removed.
fn hypergraph(max_n: u32) -> impl Strategy<Value = Complex> {
    (1..=max_n).prop_flat_map(|n| {
        let full = (1u64 << (n + 1)) - 1;
        prop::collection::vec(1..full, 0..24).prop_map(move |masks| {
            let amb = Ambient::boundary(n).unwrap();
            Complex::from_simplices(amb, masks.into_iter().map(Simplex::new)).unwrap()
        })
    })
}

fn complex(max_n: u32) -> impl Strategy<Value = Complex> {
    hypergraph(max_n).prop_map(|x| x.upper_closure())
}

fn pair(max_n: u32) -> impl Strategy<Value = (Complex, Complex)> {
    (1..=max_n).prop_flat_map(|n| {
        let full = (1u64 << (n + 1)) - 1;
        let side = move || prop::collection::vec(1..full, 0..16);
        (side(), side()).prop_map(move |(a, b)| {
            let amb = Ambient::boundary(n).unwrap();
            let mk = |m: Vec<u64>| Complex::from_simplices(amb, m.into_iter().map(Simplex::new)).unwrap();
            (mk(a), mk(b))
        })
    })
}

/// Positive exponent profiles, rejected unless generic.
fn generic_alpha(max_r: usize) -> impl Strategy<Value = ExponentProfile> {
    prop::collection::vec(0.01f64..6.0, 1..=max_r + 1)
        .prop_map(|a| ExponentProfile::new(a).unwrap())
        .prop_filter("generic", ExponentProfile::is_generic)
}

fn padded(v: Vec<u64>, len: usize) -> Vec<u64> {
    (0..len).map(|i| v.get(i).copied().unwrap_or(0)).collect()
}

proptest! {
    #[test]
    fn closures_sandwich_the_hypergraph(x in hypergraph(7)) {
        let (lo, up) = (x.lower_interior(), x.upper_closure());
        prop_assert!(lo.is_subset(&x) && x.is_subset(&up));
        prop_assert!(lo.is_closed() && up.is_closed());
        prop_assert_eq!(lo.lower_interior(), lo.clone());
        prop_assert_eq!(up.upper_closure(), up.clone());
        prop_assert_eq!(up.lower_interior(), up);
    }

    #[test]
    fn dual_is_an_order_reversing_involution((x, y) in pair(7)) {
        prop_assert_eq!(dual_c(&dual_c(&x).unwrap()).unwrap(), x.clone());
        let (cx, cy) = (dual_c(&x).unwrap(), dual_c(&y).unwrap());
        let (u, i) = (x.union(&y).unwrap(), x.intersection(&y).unwrap());
        prop_assert_eq!(dual_c(&u).unwrap(), cx.intersection(&cy).unwrap());
        prop_assert_eq!(dual_c(&i).unwrap(), cx.union(&cy).unwrap());
        prop_assert!(dual_c(&u).unwrap().is_subset(&cx));
    }

    #[test]
    fn dual_swaps_closures(x in hypergraph(10)) {
        prop_assert_eq!(dual_c(&x.upper_closure()).unwrap(), dual_c(&x).unwrap().lower_interior());
        prop_assert_eq!(dual_c(&x.lower_interior()).unwrap(), dual_c(&x).unwrap().upper_closure());
    }

    #[test]
    fn external_faces_dualise_to_maximal_faces(y in complex(8)) {
        let amb = y.ambient();
        let cy = dual_c(&y).unwrap();
        let hats: BTreeSet<Simplex> = y.external_faces().unwrap().into_iter().map(|s| s.hat(&amb).unwrap()).collect();
        prop_assert_eq!(hats, cy.maximal_faces().unwrap().into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn face_count_identities(y in complex(8)) {
        let n = y.ambient().n() as usize;
        let cy = dual_c(&y).unwrap();
        let (fy, fc) = (padded(y.f_vector(), n), padded(cy.f_vector(), n));
        let (ey, dc) = (padded(y.external_counts().unwrap(), n), padded(cy.maximal_counts().unwrap(), n));
        for i in 0..n {
            prop_assert_eq!(fy[i] as u128 + fc[n - 1 - i] as u128, binomial(n as u64 + 1, i as u64 + 1).unwrap());
            prop_assert_eq!(ey[i], dc[n - 1 - i]);
        }
    }

    #[test]
    fn euler_characteristic_matches_f_vector(y in complex(6)) {
        let chi: i64 = y.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            prop_assert_eq!(betti(&y, field).unwrap().euler_characteristic(), chi);
        }
    }

    #[test]
    fn graphs_have_field_independent_homology(edges in prop::collection::vec((0u32..9, 0u32..9), 0..30)) {
        let amb = Ambient::simplex(8).unwrap();
        let simplices = edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| Simplex::from_vertices([a, b]).unwrap());
        let g = Complex::from_simplices(amb, simplices).unwrap().upper_closure();
        prop_assert_eq!(betti(&g, Field::Prime(2)).unwrap().betti, betti(&g, Field::Rational).unwrap().betti);
    }

    #[test]
    fn dual_prime_is_the_nerve_of_the_dual(y in complex(4)) {
        let amb = y.ambient();
        let cy = dual_c(&y).unwrap();
        let prime = dual_prime(&y).unwrap();
        let nerve = nerve_of_maximal(&cy).unwrap();
        let hatted: HashSet<Vec<Simplex>> = prime
            .labelled_simplices()
            .into_iter()
            .map(|fam| {
                let mut v: Vec<Simplex> = fam.into_iter().map(|s| s.hat(&amb).unwrap()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        prop_assert_eq!(hatted, nerve.labelled_simplices());
        let (bp, bc) = (betti(&prime.complex, Field::Rational).unwrap(), betti(&cy, Field::Rational).unwrap());
        for j in -1..=amb.n() as i64 {
            prop_assert_eq!(bp.b_reduced(j), bc.b_reduced(j));
        }
    }

    #[test]
    fn float_and_exact_measures_agree(y in complex(3), num in 1i64..12) {
        let amb = y.ambient();
        let p = num_rational::BigRational::new(num.into(), 13.into());
        let exact = ParamMap::uniform(amb, p).unwrap();
        let float = exact.to_f64();
        let lo: f64 = num_traits::ToPrimitive::to_f64(&lower_measure(&y, &exact).unwrap()).unwrap();
        let up: f64 = num_traits::ToPrimitive::to_f64(&upper_measure(&y, &exact).unwrap()).unwrap();
        prop_assert!((lower_measure(&y, &float).unwrap() - lo).abs() <= 1e-12 * lo.max(1e-300) + 1e-300);
        prop_assert!((upper_measure(&y, &float).unwrap() - up).abs() <= 1e-12 * up.max(1e-300) + 1e-300);
    }

    #[test]
    fn psi_is_monotone(alpha in prop::collection::vec(0.001f64..5.0, 1..8)) {
        let rep = lower_critical_dimension(&ExponentProfile::new(alpha).unwrap());
        prop_assert!(rep.psi.windows(2).all(|w| w[0] <= w[1]));
        if let Some(k) = rep.k_lower {
            prop_assert_eq!(rep.psi.iter().filter(|&&v| v < 1.0).count() as i64, k + 1);
        }
    }

    #[test]
    fn gamma_is_unimodal_with_flat_top(p in generic_alpha(5)) {
        let b = beta_profile(&p).unwrap();
        let top = b.gamma.iter().cloned().fold(f64::MIN, f64::max);
        let flat: Vec<usize> = (0..b.gamma.len()).filter(|&k| b.gamma[k] == top).collect();
        if b.k_star >= 0 {
            prop_assert_eq!(flat.len() as i64, b.spread + 1);
            prop_assert_eq!(flat[0] as i64, b.k_star);
        }
        let peak = flat[0];
        prop_assert!(b.gamma[..=peak].windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(b.gamma[peak..].windows(2).all(|w| w[0] >= w[1]));
        if b.spread == 0 && b.k_star >= 0 {
            prop_assert!(b.gamma[..=peak].windows(2).all(|w| w[0] < w[1]));
            prop_assert!(b.gamma.get(peak + 1).is_none_or(|&g| g < top));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn zero_spread_criterion_characterises_spread(p in generic_alpha(5)) {
        let b = beta_profile(&p).unwrap();
        prop_assert_eq!(zero_spread_criterion(&p).unwrap(), b.spread == 0);
    }
}
