//! Randomized checks of the structural invariants: exact-arithmetic round
//! trips, slope interpolation, cone-row orthogonality, certificate validity,
//! and agreement between the combinatorial maps and their inverses.

use std::sync::OnceLock;

use proptest::prelude::*;

use hyperpath::coherence::{
    coherence_certificate, is_coherent_lp, omega_captures, satisfies_criterion, CaptureCone,
};
use hyperpath::geometry::psi_embed;
use hyperpath::hypersimplex::{enumerate_monotone_paths, Direction, MonotonePath};
use hyperpath::lattice::{lattice_path_of, path_of_lattice};
use hyperpath::rational::{format_rational, parse_rational, rat, Rational};

const POOL_PARAMS: [(usize, usize); 8] = [
    (4, 1),
    (5, 1),
    (4, 2),
    (5, 2),
    (6, 2),
    (4, 3),
    (5, 3),
    (6, 3),
];

fn pools() -> &'static Vec<Vec<MonotonePath>> {
    static POOLS: OnceLock<Vec<Vec<MonotonePath>>> = OnceLock::new();
    POOLS.get_or_init(|| {
        POOL_PARAMS
            .iter()
            .map(|&(n, k)| {
                enumerate_monotone_paths(n, k, &Direction::standard(n).unwrap()).unwrap()
            })
            .collect()
    })
}

fn any_path() -> impl Strategy<Value = MonotonePath> {
    (0..POOL_PARAMS.len(), any::<prop::sample::Index>())
        .prop_map(|(pool, index)| index.get(&pools()[pool]).clone())
}

/// Strictly increasing rational direction values for a path on `n` symbols.
fn any_direction(n: usize) -> impl Strategy<Value = Direction> {
    (
        proptest::collection::vec(1i64..=40, n),
        proptest::collection::vec(1i64..=12, n),
    )
        .prop_map(move |(gaps, dens)| {
            let mut values = Vec::with_capacity(n);
            let mut acc = Rational::from_integer((-50).into());
            for (g, d) in gaps.into_iter().zip(dens) {
                acc += rat(g) / rat(d);
                values.push(acc.clone());
            }
            Direction::from_values(values).unwrap().0
        })
}

fn slope(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> Rational {
    (y1 - y0) / (x1 - x0)
}

proptest! {
    #[test]
    fn rational_strings_round_trip(p in -1_000_000i64..=1_000_000, q in 1i64..=1_000_000) {
        let r = rat(p) / rat(q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn a_chord_slope_interpolates_the_edge_slopes(
        x1 in -500i64..=500,
        dx1 in 1i64..=200,
        dx2 in 1i64..=200,
        ys in proptest::collection::vec(-1000i64..=1000, 3),
    ) {
        let (x1, x2, x3) = (rat(x1), rat(x1 + dx1), rat(x1 + dx1 + dx2));
        let (y1, y2, y3) = (rat(ys[0]), rat(ys[1]), rat(ys[2]));
        let left = slope(&x1, &y1, &x2, &y2);
        let right = slope(&x2, &y2, &x3, &y3);
        let chord = slope(&x1, &y1, &x3, &y3);
        let (lo, hi) = if left <= right { (left, right) } else { (right, left) };
        prop_assert!(lo <= chord && chord <= hi);
    }

    #[test]
    fn enhanced_steps_rebuild_their_path(path in any_path()) {
        let steps = path.enhanced_steps();
        let rebuilt = MonotonePath::from_steps(path.n(), path.k(), &steps).unwrap();
        prop_assert_eq!(rebuilt, path);
    }

    #[test]
    fn the_lattice_bijection_round_trips(path in any_path()) {
        let lattice = lattice_path_of(&path);
        prop_assert_eq!(lattice.len(), path.len());
        prop_assert_eq!(path_of_lattice(&lattice), path);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_rows_are_orthogonal_to_the_direction(
        // Any increasing direction sees the same monotone paths, so a pool
        // path stays valid under a freshly drawn direction.
        (path, c) in any_path().prop_flat_map(|p| {
            let n = p.n();
            (Just(p), any_direction(n))
        }),
    ) {
        let cone = CaptureCone::new(&path, &c).unwrap();
        for row in cone.rows() {
            let dot: Rational = row
                .coeffs
                .iter()
                .zip(c.values())
                .map(|(a, v)| Rational::from_integer(a.clone()) * v)
                .sum();
            prop_assert_eq!(dot, Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn lp_coherence_implies_the_criterion(path in any_path()) {
        let c = Direction::standard(path.n()).unwrap();
        if is_coherent_lp(&path, &c).unwrap() {
            prop_assert!(satisfies_criterion(&path));
        }
    }

    #[test]
    fn certificates_capture_their_paths(path in any_path()) {
        let c = Direction::standard(path.n()).unwrap();
        let cert = coherence_certificate(&path, &c).unwrap();
        prop_assert_eq!(cert.coherent, is_coherent_lp(&path, &c).unwrap());
        match cert.omega {
            Some(omega) => {
                prop_assert!(cert.coherent);
                let cone = CaptureCone::new(&path, &c).unwrap();
                prop_assert!(omega_captures(&cone, &omega));
            }
            None => prop_assert!(!cert.coherent),
        }
    }

    #[test]
    fn embeddings_stay_in_the_hyperplane_for_any_direction(
        path in any_path(),
        shift in 0i64..=3,
    ) {
        // Perturb the standard direction by a deterministic rational shift
        // pattern; psi only needs strict monotonicity.
        let n = path.n();
        let values: Vec<Rational> = (1..=n as i64)
            .map(|i| rat(4 * i) + rat(shift) / rat(i + 1))
            .collect();
        let c = Direction::from_values(values).unwrap().0;
        let point = psi_embed(&path, &c).unwrap();
        let total: Rational = point.coords.iter().sum();
        prop_assert_eq!(total, rat(path.k() as i64));
    }
}
