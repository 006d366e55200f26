//! Randomised property suites with fixed seeds. Each returns `Err` with the
//! shrunk counterexample on failure.

use level_eulerian::levelposet::{eulerian_certificate, LevelPoset, Verdict};
use level_eulerian::matlin::AntiFlip;
use level_eulerian::ncalg::{ab_to_cd, ab_to_cd_graded, Alphabet, NcPoly, TruncSeries};
use proptest::prelude::*;

use super::strategies::{homogeneous_cd, permutation, poly, poly_no_constant, runner, series_matrix};
use super::{certified_family_matrices, conjugate};

type Outcome = Result<(), String>;

pub fn ring_axioms() -> Outcome {
    let s = (
        poly(Alphabet::Ab, 4, 5),
        poly(Alphabet::Ab, 4, 5),
        poly(Alphabet::Ab, 4, 5),
    );
    runner(200, 1)
        .run(&s, |(p, q, r)| {
            let zero = NcPoly::zero(Alphabet::Ab);
            let one = NcPoly::one(Alphabet::Ab);
            prop_assert_eq!(
                p.try_mul(&q).unwrap().try_mul(&r).unwrap(),
                p.try_mul(&q.try_mul(&r).unwrap()).unwrap()
            );
            prop_assert_eq!(p.try_add(&q).unwrap(), q.try_add(&p).unwrap());
            prop_assert_eq!(
                p.try_mul(&q.try_add(&r).unwrap()).unwrap(),
                p.try_mul(&q).unwrap().try_add(&p.try_mul(&r).unwrap()).unwrap()
            );
            prop_assert_eq!(
                q.try_add(&r).unwrap().try_mul(&p).unwrap(),
                q.try_mul(&p).unwrap().try_add(&r.try_mul(&p).unwrap()).unwrap()
            );
            prop_assert_eq!(p.try_add(&zero).unwrap(), p.clone());
            prop_assert_eq!(p.try_mul(&one).unwrap(), p.clone());
            prop_assert!(p.try_sub(&p).unwrap().is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn delta_leibniz() -> Outcome {
    let ab = (poly(Alphabet::Ab, 4, 4), poly(Alphabet::Ab, 4, 4));
    runner(200, 2)
        .run(&ab, |(p, q)| {
            let lhs = p.try_mul(&q).unwrap().delta().unwrap();
            let rhs = p
                .delta()
                .unwrap()
                .try_mul(&q)
                .unwrap()
                .try_add(&p.try_mul(&q.delta().unwrap()).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // delta on cd agrees with delta on ab through the change of basis
    runner(100, 3)
        .run(&poly(Alphabet::Cd, 3, 4), |p| {
            prop_assert_eq!(
                p.delta().unwrap().cd_to_ab().unwrap(),
                p.cd_to_ab().unwrap().delta().unwrap()
            );
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn reversal() -> Outcome {
    let s = (poly(Alphabet::Cd, 3, 4), poly(Alphabet::Cd, 3, 4));
    runner(200, 4)
        .run(&s, |(p, q)| {
            prop_assert_eq!(
                p.try_mul(&q).unwrap().reverse(),
                q.reverse().try_mul(&p.reverse()).unwrap()
            );
            prop_assert_eq!(p.reverse().reverse(), p.clone());
            prop_assert_eq!(
                p.try_add(&q).unwrap().reverse(),
                p.reverse().try_add(&q.reverse()).unwrap()
            );
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `delta(1/(1-u)) = 1/(1-u) delta(u) 1/(1-u)`.
pub fn geometric_delta() -> Outcome {
    let s = (poly_no_constant(Alphabet::Ab, 3, 4), 0u32..=5);
    runner(100, 5)
        .run(&s, |(u, cutoff)| {
            prop_assert!(TruncSeries::new(u, cutoff).delta_geom_identity_check().unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner(60, 6)
        .run(&(poly_no_constant(Alphabet::Cd, 3, 3), 0u32..=6), |(u, cutoff)| {
            prop_assert!(TruncSeries::new(u, cutoff).delta_geom_identity_check().unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn ab_cd_round_trip() -> Outcome {
    let s = (0u32..=7).prop_flat_map(homogeneous_cd);
    runner(120, 7)
        .run(&s, |p| {
            let ab = p.cd_to_ab().unwrap();
            if p.is_zero() {
                prop_assert!(ab.is_zero());
            } else {
                prop_assert_eq!(ab_to_cd(&ab).unwrap(), p.clone());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner(60, 8)
        .run(&poly(Alphabet::Cd, 3, 5), |p| {
            prop_assert_eq!(ab_to_cd_graded(&p.cd_to_ab().unwrap()).unwrap(), p.clone());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn anti_flip_relations() -> Outcome {
    let s = (series_matrix(3, Alphabet::Ab, 6), series_matrix(3, Alphabet::Ab, 6));
    runner(80, 9)
        .run(&s, |(m, n)| {
            prop_assert_eq!(
                m.try_mul(&n).unwrap().anti_flip(),
                n.anti_flip().try_mul(&m.anti_flip()).unwrap()
            );
            prop_assert_eq!(
                m.try_add(&n).unwrap().anti_flip(),
                m.anti_flip().try_add(&n.anti_flip()).unwrap()
            );
            prop_assert_eq!(m.anti_flip().anti_flip(), m.clone());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Every interval of length `1..=6` in a certified poset has as many
/// elements of even rank as of odd rank. Inputs are the family matrices
/// under random relabelings of the vertices.
pub fn euler_relation() -> Outcome {
    let family = certified_family_matrices();
    let s = (0..family.len()).prop_flat_map(move |k| {
        let n = family[k].1.rows();
        (Just(family[k].1.clone()), permutation(n))
    });
    runner(12, 10)
        .run(&s, |(m, perm)| {
            let m = conjugate(&m, &perm);
            let poset = LevelPoset::new(m).unwrap();
            prop_assert_eq!(eulerian_certificate(&poset).unwrap().verdict, Verdict::Certified);
            let n = poset.n();
            for p in 1..=6u32 {
                for i in 0..n {
                    for j in 0..n {
                        let Ok(iv) = poset.interval(i, j, p) else { continue };
                        let euler: i64 = (0..=p)
                            .map(|s| if s % 2 == 0 { 1 } else { -1 } * iv.elements(s).unwrap().len() as i64)
                            .sum();
                        prop_assert_eq!(euler, 0, "interval ({}, {}, {})", i, j, p);
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub type Suite = (&'static str, fn() -> Outcome);

pub fn all() -> Vec<Suite> {
    vec![
        ("ring axioms", ring_axioms),
        ("delta Leibniz rule", delta_leibniz),
        ("reversal anti-isomorphism", reversal),
        ("delta on geometric series", geometric_delta),
        ("ab/cd round trips", ab_cd_round_trip),
        ("anti-flip relations", anti_flip_relations),
        ("Euler relation", euler_relation),
    ]
}
