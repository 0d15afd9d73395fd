use std::collections::{BTreeMap, BTreeSet};

use helistar::band::{BandSpec, EdgeClass, FaceId, OffsetTriple};
use proptest::prelude::*;

fn band_strategy() -> impl Strategy<Value = BandSpec> {
    (3u32..40)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_map(|(n, s)| BandSpec::new(n, s).unwrap())
}

fn triple_strategy() -> impl Strategy<Value = OffsetTriple> {
    (1u32..30, 0u32..30).prop_map(|(a, extra)| OffsetTriple::new(a, a + extra).unwrap())
}

proptest! {
    #[test]
    fn lattice_map_is_a_bijection_on_a_period(band in band_strategy()) {
        let n = band.strips() as i64;
        let s = band.shift() as i64;
        // Boundaries 0..n and one step along: n·(something) labels; the
        // quotient identifies (i + n, j) with (i, j - s).
        for i in -3..3i64 {
            for j in -3..3i64 {
                prop_assert_eq!(band.lattice_index(i + n, j), band.lattice_index(i, j + s));
            }
        }
        let ks: BTreeSet<i64> = (0..n).map(|j| band.lattice_index(0, j)).collect();
        prop_assert_eq!(ks.len(), n as usize);
    }

    #[test]
    fn every_edge_has_two_faces(off in triple_strategy(), k in -100i64..100) {
        for class in EdgeClass::ALL {
            let d = off.offset(class) as i64;
            let (fwd, bwd) = off.edge_faces(class, k);
            prop_assert_ne!(fwd, bwd);
            for f in [fwd, bwd] {
                let v = f.vertices(&off);
                prop_assert!(v.contains(&k) && v.contains(&(k + d)));
            }
        }
    }

    #[test]
    fn every_vertex_has_six_faces_in_cycle(off in triple_strategy(), k in -100i64..100) {
        let faces = off.incident_faces(k);
        let distinct: BTreeSet<FaceId> = faces.iter().copied().collect();
        prop_assert_eq!(distinct.len(), 6);
        let cycle = off.neighbor_cycle();
        for (i, f) in faces.iter().enumerate() {
            let v = f.vertices(&off);
            prop_assert!(v.contains(&k));
            prop_assert!(v.contains(&(k + cycle[i])));
            prop_assert!(v.contains(&(k + cycle[(i + 1) % 6])));
        }
    }

    #[test]
    fn face_orientation_is_coherent(off in triple_strategy()) {
        prop_assume!(!off.is_degenerate());
        // Each directed edge is used once, so each undirected edge is walked
        // in both directions by its two faces.
        let mut directed: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for base in -50..50i64 {
            for f in [FaceId::up(base), FaceId::down(base)] {
                let v = f.vertices(&off);
                for e in 0..3 {
                    *directed.entry((v[e], v[(e + 1) % 3])).or_default() += 1;
                }
            }
        }
        prop_assert!(directed.values().all(|&c| c == 1));
        let c = off.c() as i64;
        for k in (c - 50)..(50 - c) {
            for d in [off.a() as i64, off.b() as i64, c] {
                prop_assert!(directed.contains_key(&(k, k + d)) && directed.contains_key(&(k + d, k)));
            }
        }
    }

    #[test]
    fn compound_components_take_every_gth_index(band in band_strategy()) {
        let g = band.component_count();
        if g > 1 {
            let comp = band.split_compound().unwrap();
            prop_assert_eq!(comp.components, g);
            if band.strips() / g < 3 {
                prop_assert!(comp.component_band().is_err());
                return Ok(());
            }
            let cb = comp.component_band().unwrap();
            let off = band.offsets();
            let sub = cb.offsets();
            prop_assert_eq!((off.a(), off.b()), (g * sub.a(), g * sub.b()));
        } else {
            prop_assert!(band.split_compound().is_err());
        }
    }
}

#[test]
fn shift_range_is_enforced() {
    assert!(BandSpec::new(5, 5).is_err());
    assert!(BandSpec::new(5, 0).is_err());
    assert!(BandSpec::new(2, 1).is_err());
    let mirrored = BandSpec::new(5, 4).unwrap();
    assert_eq!(mirrored.shift(), 1);
    assert!(mirrored.is_mirrored());
}
