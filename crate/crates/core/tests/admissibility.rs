mod common;

use fiedler_core::admissibility::{
    check_corollary2, check_theorem2, distance_between_extrema, extrema_verdict,
    sign_change_attachments, CaterpillarSpec,
};
use fiedler_core::enumeration::enumerate_free_trees;
use fiedler_core::generators::{
    gen_caterpillar, gen_path, gen_rose_on_path, gen_spine, gen_spine_with_leaves,
};
use fiedler_core::spectral::fiedler_pair;
use fiedler_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_attached_path, rose_example};

fn relaxed(g: &Graph) -> bool {
    extrema_verdict(g, &fiedler_pair(g).unwrap())
        .unwrap()
        .relaxed
}

#[test]
fn checker_examples() {
    let p = check_theorem2(&gen_path(101).unwrap()).unwrap();
    assert!(p.admissible && p.rows.is_empty());

    let g = gen_rose_on_path(120, 60, 0).unwrap();
    let r = check_theorem2(&g).unwrap();
    assert!(r.admissible);
    assert_eq!(r.rows.len(), 1);
    let row = &r.rows[0];
    assert_eq!((row.anchor, row.size, row.hit), (60, 1, Some(1.0)));
    assert!((row.size_bound - 120.0 / 32.0).abs() < 1e-12);
    assert!((row.hit_bound - 72.0).abs() < 1e-12);

    let g = gen_rose_on_path(40, 20, 12).unwrap();
    let r = check_theorem2(&g).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.rows[0].size, 13);
    assert!(!r.rows[0].size_ok);
}

#[test]
fn attachments_at_path_ends_never_pass() {
    let r = check_theorem2(&gen_rose_on_path(200, 1, 0).unwrap()).unwrap();
    // the pendant vertex makes the path one longer and sits at position 2
    assert!(!r.admissible);
}

#[test]
fn corollary_examples() {
    assert!(check_corollary2(&CaterpillarSpec::bare(30)));
    let ok = CaterpillarSpec::bare(100).with_leg(50, 2).unwrap();
    let too_long = CaterpillarSpec::bare(100).with_leg(50, 3).unwrap();
    assert!(check_corollary2(&ok));
    assert!(!check_corollary2(&too_long));
}

#[test]
fn rose_example_breaks_the_property() {
    let g = rose_example();
    let pair = fiedler_pair(&g).unwrap();
    let v = extrema_verdict(&g, &pair).unwrap();
    assert!(!v.relaxed && !v.strict && !v.degenerate);
    // one extreme is the far path end, the other the rose leaves
    let (end, leaves) = if v.argmax == vec![9] {
        (&v.argmax, &v.argmin)
    } else {
        (&v.argmin, &v.argmax)
    };
    assert_eq!(end, &vec![9]);
    assert_eq!(leaves, &(11..=22).collect::<Vec<_>>());
}

#[test]
fn strict_implies_relaxed() {
    for n in 2..=10 {
        for g in enumerate_free_trees(n).unwrap() {
            let v = extrema_verdict(&g, &fiedler_pair(&g).unwrap()).unwrap();
            assert!(!v.strict || v.relaxed);
        }
    }
}

#[test]
fn admissible_random_constructions_keep_extrema_at_the_ends() {
    let mut accepted = 0;
    let mut seed = 0;
    while accepted < 100 {
        assert!(
            seed < 2000,
            "only {accepted} admissible graphs in {seed} draws"
        );
        let g = random_attached_path(seed);
        seed += 1;
        let pair = fiedler_pair(&g).unwrap();
        let report = check_theorem2(&g).unwrap();
        if !report.admissible || pair.degenerate {
            continue;
        }
        accepted += 1;
        assert!(!report.rows.is_empty());
        assert!(
            extrema_verdict(&g, &pair).unwrap().relaxed,
            "seed {}",
            seed - 1
        );
        assert!(report.margins_hold);
        assert!(report.lambda_hit_margin <= 0.5 + 1e-9);
        assert!(report.lambda_path_margin <= 5.0 + 1e-9);
    }
}

#[test]
fn admissible_free_trees_keep_extrema_at_the_ends() {
    for n in 2..=12 {
        for g in enumerate_free_trees(n).unwrap() {
            let report = check_theorem2(&g).unwrap();
            let pair = fiedler_pair(&g).unwrap();
            if report.admissible && !pair.degenerate {
                assert!(extrema_verdict(&g, &pair).unwrap().relaxed);
                assert!(report.margins_hold);
            }
        }
    }
}

#[test]
fn sign_classes_inside_attachments_are_large() {
    for n in 3..=12 {
        for g in enumerate_free_trees(n).unwrap() {
            let pair = fiedler_pair(&g).unwrap();
            if pair.degenerate {
                continue;
            }
            let decomp = g.decompose_along_path(&g.longest_path().unwrap()).unwrap();
            let d = decomp.length() as f64;
            for comp in sign_change_attachments(&decomp, &pair) {
                assert!(comp.size as f64 >= d / 32.0);
            }
        }
    }
}

#[test]
fn caterpillar_rule_on_short_spines() {
    // with at most 14 spine edges every nonempty leg breaks the rule, so only
    // bare spines pass
    for spine in 1..=14 {
        let bare = CaterpillarSpec::bare(spine);
        assert!(check_corollary2(&bare));
        assert!(relaxed(&gen_caterpillar(&bare)));
        for k in 0..=spine {
            for len in 1..=3 {
                let spec = CaterpillarSpec::bare(spine).with_leg(k, len).unwrap();
                assert!(!check_corollary2(&spec));
            }
        }
    }
}

#[test]
fn caterpillars_passing_the_rule_keep_extrema_at_the_ends() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut tested = 0;
    while tested < 60 {
        let spine = rng.gen_range(40..=240);
        let mut spec = CaterpillarSpec::bare(spine);
        for k in 0..=spine {
            let cap = k.min(spine - k) / 20;
            if cap > 0 && rng.gen_bool(0.3) {
                for _ in 0..rng.gen_range(1..=3) {
                    spec = spec.with_leg(k, rng.gen_range(1..=cap)).unwrap();
                }
            }
        }
        assert!(check_corollary2(&spec));
        let g = gen_caterpillar(&spec);
        let pair = fiedler_pair(&g).unwrap();
        if pair.degenerate {
            continue;
        }
        tested += 1;
        assert!(extrema_verdict(&g, &pair).unwrap().relaxed, "{spec}");
    }
}

#[test]
fn trapping_rose_pulls_the_extrema_together() {
    for d in [40, 60, 80] {
        let g = gen_rose_on_path(d, d / 4, 3 * d).unwrap();
        let pair = fiedler_pair(&g).unwrap();
        let v = extrema_verdict(&g, &pair).unwrap();
        assert!(!v.relaxed);
        let dist = distance_between_extrema(&g, &v).unwrap();
        // the rose plus its anchor edge has diameter 2
        assert!(dist as f64 <= 0.75 * d as f64 + 2.0);
        assert!(dist < d);
    }
}

#[test]
fn spine_keeps_extrema_at_the_ends() {
    let g = gen_spine(60, 20);
    let v = extrema_verdict(&g, &fiedler_pair(&g).unwrap()).unwrap();
    assert!(v.relaxed && !v.degenerate);
    let mut ends = v.argmax.clone();
    ends.extend(&v.argmin);
    ends.sort_unstable();
    assert_eq!(ends, vec![0, 60]);
}

#[test]
fn leaves_on_the_spine_eventually_flip_the_vector() {
    let (d, stub) = (60, 20);
    let tip = d + stub;
    let verdicts: Vec<_> = (0..=6)
        .map(|leaves| {
            let g = gen_spine_with_leaves(d, stub, leaves);
            (
                g.clone(),
                extrema_verdict(&g, &fiedler_pair(&g).unwrap()).unwrap(),
            )
        })
        .collect();
    assert!(verdicts[0].1.relaxed);
    let flip = verdicts
        .iter()
        .position(|(_, v)| !v.relaxed)
        .expect("no flip up to 6 leaves");
    for (g, v) in &verdicts[flip..] {
        assert!(!v.relaxed);
        // the moved extremum sits at the stub's tip: the tip itself or the
        // leaves hanging from it
        let moved = if v.argmin.contains(&0) || v.argmin.contains(&d) {
            &v.argmax
        } else {
            &v.argmin
        };
        assert!(
            moved.iter().all(|&u| u == tip || g.has_edge(u, tip)),
            "{moved:?}"
        );
    }
    for (_, v) in &verdicts[..flip] {
        assert!(v.relaxed);
    }
}

#[test]
fn degenerate_trees_report_instead_of_failing() {
    let star = gen_rose_on_path(2, 1, 0).unwrap();
    let v = extrema_verdict(&star, &fiedler_pair(&star).unwrap()).unwrap();
    assert!(v.degenerate);
    assert!(distance_between_extrema(&star, &v).is_err());
}
