mod common;

use common::*;
use mellin_core::germ::Point;
use mellin_core::phase::{random_operator, verify, CheckId, CheckStatus, Profile, WindowPolicy};
use mellin_core::rational::rat;

#[test]
fn curated_suite_has_no_defect() {
    for (name, p) in curated() {
        let r = verify(&p, None, WindowPolicy::default()).unwrap();
        assert_eq!(r.defect, Some(0), "{name}");
        for (id, status) in &r.checks {
            assert_eq!(*status, CheckStatus::Pass, "{name}: {id}");
        }
    }
}

#[test]
fn delta_modules_have_defect_m() {
    for s in [1, 2, -1] {
        for m in 1..=3u32 {
            // (z - s)^m as an operator of order 0
            let base = int_op(&[(1, 0, 1), (0, 0, -s)]);
            let p = base.pow(m);
            let r = verify(&p, Some(m as i64), WindowPolicy::default()).unwrap();
            assert_eq!(r.defect, Some(m as i64));
            assert!(r.success());
            let irr0 = r.local(&Point::Zero).unwrap().irr;
            let irr_inf = r.local(&Point::Infinity).unwrap().irr;
            let mu: u64 = r.locals.iter().filter(|g| matches!(g.point, Point::Finite(_))).map(|g| g.mu).sum();
            assert_eq!((irr0, irr_inf, mu), (0, 0, 0));
            assert_eq!(*r.status(CheckId::Rotation), CheckStatus::Pass);
            assert_eq!(r.singular.points, vec![rat(s)]);
        }
    }
}

#[test]
fn regular_profile_partition_and_dims() {
    for seed in 0..150 {
        let p = random_operator(seed, Profile::Regular);
        let r = verify(&p, None, WindowPolicy::default()).unwrap();
        for id in [CheckId::Rotation, CheckId::SlopePartition, CheckId::LocalDims, CheckId::HorzLocalization] {
            assert_eq!(*r.status(id), CheckStatus::Pass, "seed {seed}: {p}");
        }
        assert_eq!(r.width_partition.zero, r.defect.unwrap(), "seed {seed}");
    }
}

#[test]
fn horizontal_zeros_sit_at_singular_points() {
    for seed in 0..120 {
        for p in [random_operator(seed, Profile::Regular), single_singularity(seed)] {
            let r = verify(&p, None, WindowPolicy::default()).unwrap();
            assert_eq!(*r.status(CheckId::HorzLocalization), CheckStatus::Pass, "{p}");
            assert!(r.horz.roots.iter().all(|h| r.singular.points.contains(h)));
        }
    }
}

#[test]
fn small_profile_checks() {
    for seed in 0..150 {
        let p = random_operator(seed, Profile::Small);
        let r = verify(&p, None, WindowPolicy::default()).unwrap();
        for id in [CheckId::Rotation, CheckId::SlopePartition, CheckId::LocalDims] {
            assert_eq!(*r.status(id), CheckStatus::Pass, "seed {seed}: {p}");
        }
    }
}
