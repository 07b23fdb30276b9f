//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//! Criterion 11 (the `K_8` census) runs only with `GDRAW_STRETCH=1`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{binomial, PointSet};
use gdraw_core::triangles::all_triangles;
use gdraw_core::{
    empty_triangles, realize, side_partition, Census, Claim, Enumerator, Realizer, RotationSystem,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Gate {
    en: Enumerator<'static>,
    censuses: Vec<Census>,
}

impl Gate {
    fn census(&self, n: usize) -> &Census {
        &self.censuses[n - 3]
    }

    fn claim_over(&self, claim: Claim, levels: std::ops::RangeInclusive<usize>) -> Outcome {
        let mut classes = 0;
        for n in levels {
            let report = self.en.verify(self.census(n), claim).map_err(|e| e.to_string())?;
            ensure(report.passed(), || report.to_string())?;
            classes += report.classes;
        }
        Ok(format!("{classes} classes"))
    }

    fn k4_exactness(&self) -> Outcome {
        let systems = common::all_rotation_systems(4);
        ensure(systems.len() == 16, || format!("{} K4 systems", systems.len()))?;
        let mut realizable = 0;
        for rs in &systems {
            let r = Realizer::unguided().realize(rs).map_err(|e| e.to_string())?;
            if r.is_realizable() {
                realizable += 1;
                let e = empty_triangles(rs).len();
                ensure(e == 4, || format!("{rs:?} has {e} empty triangles"))?;
            }
        }
        ensure(realizable == 8, || format!("{realizable} realizable K4 systems, expected 8"))?;
        Ok("16 systems, 8 realizable, each with 4 empty triangles".into())
    }

    fn minima_5_6(&self) -> Outcome {
        let (m5, m6) = (self.census(5).min_empty(), self.census(6).min_empty());
        ensure(m5 == Some(6) && m6 == Some(8), || format!("minima {m5:?}, {m6:?}"))?;
        Ok("min empty 6 at n=5, 8 at n=6".into())
    }

    fn observation_7(&self) -> Outcome {
        let c = self.census(7);
        let m = c.min_empty();
        ensure(m == Some(10), || format!("min empty {m:?} at n=7"))?;
        let report = self.en.verify(c, Claim::Obs2n4).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_string())?;
        Ok(format!("{} classes, min empty 10", c.records.len()))
    }

    fn cross_representation(&self) -> Outcome {
        let mut systems: Vec<RotationSystem> = (3..=6)
            .flat_map(|n| self.census(n).records.iter().map(|r| r.key.to_rotation_system()))
            .collect();
        let small = systems.len();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        let sample: Vec<_> = self.census(7).records.choose_multiple(&mut rng, 200).collect();
        systems.extend(sample.iter().map(|r| r.key.to_rotation_system()));
        let mut triangles = 0;
        for rs in &systems {
            let r = realize(rs).map_err(|e| e.to_string())?;
            let d = r.drawing().ok_or_else(|| format!("{rs:?} did not realize"))?;
            for t in all_triangles(rs.n()) {
                let from_rotation = side_partition(rs, &t).map_err(|e| e.to_string())?;
                let from_regions = d.region_partition(&t).map_err(|e| e.to_string())?;
                ensure(from_rotation.is_empty_triangle() == from_regions.is_empty_triangle(), || {
                    format!("{rs:?} triangle {t}: {from_rotation} vs {from_regions}")
                })?;
                triangles += 1;
            }
        }
        Ok(format!("{small} classes n<=6 and {} at n=7, {triangles} triangles", sample.len()))
    }

    fn convex_oracle(&self) -> Outcome {
        for n in 3..=10 {
            let pts = PointSet::convex(n);
            let rs = RotationSystem::convex(n).map_err(|e| e.to_string())?;
            ensure(pts.rotation_system() == rs, || format!("rotation mismatch at n={n}"))?;
            let geometric = pts.empty_triangles().len();
            let ours = empty_triangles(&rs).len();
            ensure(geometric == binomial(n, 3) && ours == geometric, || {
                format!("n={n}: {ours} empty, geometry {geometric}")
            })?;
            let r = realize(&rs).map_err(|e| e.to_string())?;
            let crossings = r.drawing().map(|d| d.crossing_count());
            let expected = pts.crossing_count();
            ensure(expected == binomial(n, 4) && crossings == Some(expected), || {
                format!("n={n}: {crossings:?} crossings, geometry {expected}")
            })?;
        }
        Ok("n=3..10 match the straight-line oracle".into())
    }

    fn stretch(&self) -> Outcome {
        let c = self.en.enumerate(8).map_err(|e| e.to_string())?;
        let folded = c.records.len();
        let free = c.records.iter().filter(|r| r.lucky == 0).count();
        ensure((folded == 5_370_725 || c.unfolded == 5_370_725) && free == 1, || {
            format!("{folded} classes ({} unfolded), {free} without a lucky vertex", c.unfolded)
        })?;
        Ok(format!("{folded} classes ({} unfolded), one without a lucky vertex", c.unfolded))
    }
}

fn run(id: &str, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS {id:>2} {name}: {detail} ({secs:.1}s)");
            true
        }
        Err(detail) => {
            println!("FAIL {id:>2} {name}: {detail} ({secs:.1}s)");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let en = Enumerator::new(0).expect("worker pool");
    let censuses = (3..=7).map(|n| en.enumerate(n).expect("census")).collect();
    println!("censuses n=3..7 built in {:.1}s", start.elapsed().as_secs_f64());
    let gate = Gate { en, censuses };

    let mut ok = true;
    ok &= run("1", "K4 exactness", || gate.k4_exactness());
    ok &= run("2", "minima at n=5,6", || gate.minima_5_6());
    ok &= run("3", "observation at n=7", || gate.observation_7());
    ok &= run("4", "at least n empty triangles, n=4..6", || gate.claim_over(Claim::TheoremN, 4..=6));
    ok &= run("5", "two empty star triangles per vertex, n=4..6", || gate.claim_over(Claim::CorTwoStar, 4..=6));
    ok &= run("6", "star triangle emptiness iff adjacency, n=3..6", || gate.claim_over(Claim::Prop1Iff, 3..=6));
    ok &= run("7", "lonely implies t>=3, n=4..6", || gate.claim_over(Claim::PropLonely3, 4..=6));
    ok &= run("8", "deletion identity, n=5..6", || gate.claim_over(Claim::DeletionIdentity, 5..=6));
    ok &= run("9", "rotation vs drawing emptiness", || gate.cross_representation());
    ok &= run("10", "convex position oracle", || gate.convex_oracle());
    if std::env::var("GDRAW_STRETCH").is_ok_and(|v| v == "1") {
        ok &= run("11", "K8 census (stretch)", || gate.stretch());
    } else {
        println!("SKIP 11 K8 census (stretch): set GDRAW_STRETCH=1 to run");
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
