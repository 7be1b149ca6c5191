//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::io::Write;

use bintri::classify::{
    case1_spec, case2_specs, check_symmetry_conditions, is_symmetric, pascal_impossibility_report,
    sum_above_check, symmetric_families, symmetric_sum_above_specs, value_set, FamilyTag,
    Orientation,
};
use bintri::explicit::{girard_waring_entry, rising_diagonal_constant, ClosedForm, ClosedFormCase};
use bintri::oeis::{prefix_matches, MatchOutcome};
use bintri::sequences::{
    alternating_row_sums, alternating_sum_recurrence, check_d_even_relation, column_recurrence,
    column_sequence, d_sequence, left_diagonal, right_diagonal, rising_diagonal_recurrence,
    rising_diagonal_sums, row_sum_recurrence, row_sums, Verdict,
};
use bintri::transform::{
    entry_from_column, entry_from_right_diagonal, forward_transform, inverse_transform,
};
use bintri::triangle::{build_triangle, Entries};
use bintri::{rat, Rational, Sequence, Triangle, TriangleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn report(id: u32, name: &str, outcome: Check) {
    let line = match &outcome {
        Ok(()) => format!("criterion {id:>2} PASS  {name}\n"),
        Err(e) => format!("criterion {id:>2} FAIL  {name}: {e}\n"),
    };
    // written past the test harness capture so the line always shows
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(v: &Verdict, what: impl FnOnce() -> String) -> Check {
    ensure(v.passed(), || format!("{}: {v:?}", what()))
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

struct Gen(ChaCha8Rng);

impl Gen {
    fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    /// `p/q` with `|p| <= 10`, `1 <= q <= 10`.
    fn any(&mut self) -> Rational {
        let p: i64 = self.0.gen_range(-10..=10);
        let q: i64 = self.0.gen_range(1..=10);
        rat((p, q))
    }

    fn nonzero(&mut self) -> Rational {
        loop {
            let x = self.any();
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn small_int(&mut self) -> i64 {
        self.0.gen_range(-6..=6)
    }

    fn seeds(&mut self) -> (Rational, Rational) {
        loop {
            let (a0, a1) = (self.any(), self.any());
            if !(a0.is_zero() && a1.is_zero()) {
                return (a0, a1);
            }
        }
    }

    fn spec(&mut self) -> TriangleSpec {
        let (a0, a1) = self.seeds();
        let (alpha, beta, u, v) = (
            self.nonzero(),
            self.nonzero(),
            self.nonzero(),
            self.nonzero(),
        );
        TriangleSpec::new(a0, a1, alpha, beta, u, v).expect("valid random spec")
    }
}

fn spec(p: [i64; 6]) -> TriangleSpec {
    let [a0, a1, alpha, beta, u, v] = p.map(rat);
    TriangleSpec::new(a0, a1, alpha, beta, u, v).expect("valid spec")
}

fn lucas() -> TriangleSpec {
    spec([2, 1, 1, 1, -1, 1])
}

fn build(s: &TriangleSpec, rows: usize) -> Result<Triangle, String> {
    ok(build_triangle(s, rows))
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[test]
fn criterion_01_reference_triangle() {
    let printed: [&[i64]; 7] = [
        &[2],
        &[1, 1],
        &[3, -2, 3],
        &[4, -1, -1, 4],
        &[7, -3, 2, -3, 7],
        &[11, -4, 1, 1, -4, 11],
        &[18, -7, 3, -2, 3, -7, 18],
    ];
    let run = || -> Check {
        let t = build(&lucas(), 7)?;
        let expected: Vec<Vec<Rational>> = printed.iter().map(|r| ints(r)).collect();
        ensure(t.flatten().len() == 28, || "entry count".into())?;
        ensure(t.rows() == expected.as_slice(), || {
            format!("got {:?}", t.rows())
        })
    };
    report(1, "reference triangle reproduced entry for entry", run());
}

#[test]
fn criterion_02_transform_identities() {
    let run = || -> Check {
        let mut g = Gen::new(2);
        for _ in 0..100 {
            let s = g.spec();
            let t = build(&s, 11)?;
            let (u, v) = (s.u(), s.v());
            let left = Sequence::new(left_diagonal(&t).terms);
            let right = Sequence::new(right_diagonal(&t).terms);
            let fwd = ok(forward_transform(&left, u, v, 11))?;
            ensure(fwd == right, || {
                format!("{s}: forward transform of left leg")
            })?;
            let inv = ok(inverse_transform(&right, u, v, 11))?;
            ensure(inv == left, || {
                format!("{s}: inverse transform of right leg")
            })?;
            for n in 0..=10 {
                for k in 0..=n {
                    for k0 in 0..=k {
                        let col = t.column(k0);
                        let e = ok(entry_from_column(&col, k0, u, v, n, k))?;
                        ensure(&e == t.entry(n, k), || {
                            format!("{s}: column {k0} formula at ({n},{k})")
                        })?;
                    }
                    let e = ok(entry_from_right_diagonal(&right, u, v, n, k))?;
                    ensure(&e == t.entry(n, k), || {
                        format!("{s}: right-diagonal formula at ({n},{k})")
                    })?;
                }
            }
        }
        Ok(())
    };
    report(
        2,
        "legs related by the interpolated transform; entry formulas exact",
        run(),
    );
}

#[test]
fn criterion_03_local_identities() {
    let run = || -> Check {
        let mut g = Gen::new(3);
        for _ in 0..100 {
            let s = g.spec();
            let r = ok(build(&s, 12)?.check_local_identities())?;
            ensure(r.all_pass(), || format!("{s}: {r:?}"))?;
        }
        Ok(())
    };
    report(3, "local identities t1..t7 on 100 random specs", run());
}

#[test]
fn criterion_04_sum_recurrences() {
    let run = || -> Check {
        let mut g = Gen::new(4);
        for i in 0..200 {
            let s = if i < 100 {
                g.spec()
            } else {
                let (a0, a1) = g.seeds();
                let alpha = g.nonzero();
                ok(TriangleSpec::new(
                    a0,
                    a1,
                    alpha.clone(),
                    g.nonzero(),
                    rat(-1),
                    alpha,
                ))?
            };
            let t = build(&s, 14)?;
            let (rs, alt) = (row_sums(&t), alternating_row_sums(&t));
            let rr = row_sum_recurrence(&s);
            let ar = alternating_sum_recurrence(&s);
            passed(&ok(rs.verify(&rr.order4))?, || format!("{s} row sums"))?;
            passed(&ok(alt.verify(&ar.order4))?, || {
                format!("{s} alternating sums")
            })?;
            if i >= 100 {
                let o2 = rr.order2.ok_or("order-2 relation missing")?;
                passed(&ok(rs.verify(&o2))?, || format!("{s} order-2 row sums"))?;
                let el = ar.even_lag.ok_or("even-lag relation missing")?;
                passed(&ok(alt.verify(&el))?, || {
                    format!("{s} even-lag alternating sums")
                })?;
            }
        }
        let t = build(&lucas(), 7)?;
        ensure(
            row_sums(&t).terms == ints(&[2, 2, 4, 6, 10, 16, 26]),
            || "Lucas row sums".into(),
        )?;
        ensure(
            alternating_row_sums(&t).terms == ints(&[2, 0, 8, 0, 22, 0, 58]),
            || "Lucas alternating sums".into(),
        )?;
        ensure(
            row_sum_recurrence(&lucas()).order4.coefficients() == ints(&[2, 1, -2, -1]).as_slice(),
            || "Lucas row-sum coefficients".into(),
        )
    };
    report(4, "row and alternating sum recurrences", run());
}

#[test]
fn criterion_05_rising_diagonals() {
    let run = || -> Check {
        let mut g = Gen::new(5);
        for _ in 0..100 {
            let s = g.spec();
            let t = build(&s, 16)?;
            let d = rising_diagonal_sums(&t);
            let rec = rising_diagonal_recurrence(&s);
            passed(&ok(d.verify(&rec.order6))?, || {
                format!("{s} sixth-order relation")
            })?;
            let big_d = d_sequence(&d, s.alpha(), s.beta());
            passed(&ok(big_d.verify(&rec.d_relation))?, || {
                format!("{s} D relation")
            })?;
            passed(
                &ok(check_d_even_relation(&big_d, &right_diagonal(&t).terms))?,
                || format!("{s} D_2k = -b_k"),
            )?;
        }
        let t = build(&lucas(), 9)?;
        let d = rising_diagonal_sums(&t);
        ensure(d.terms == ints(&[2, 1, 4, 2, 9, 7, 20, 20, 47]), || {
            format!("Lucas d = {:?}", d.terms)
        })?;
        let big_d = d_sequence(&d, &rat(1), &rat(1));
        let b = right_diagonal(&t);
        for k in 1..=3 {
            let expected = [-1, -3, -4][k - 1];
            ensure(big_d.get(2 * k) == Some(&rat(expected)), || {
                format!("Lucas D_{}", 2 * k)
            })?;
            ensure(b.get(k) == Some(&rat(-expected)), || format!("Lucas b_{k}"))?;
        }
        Ok(())
    };
    report(5, "rising diagonal relations", run());
}

#[test]
fn criterion_06_columns() {
    let run = || -> Check {
        let mut g = Gen::new(6);
        for i in 0..200 {
            let s = if i < 100 {
                g.spec()
            } else {
                // v = -u alpha
                let (a0, a1) = g.seeds();
                let (alpha, u) = (g.nonzero(), g.nonzero());
                let v = -(&u * &alpha);
                ok(TriangleSpec::new(a0, a1, alpha, g.nonzero(), u, v))?
            };
            let t = build(&s, 16)?;
            let rec = column_recurrence(&s);
            for ell in -3..=3 {
                let c = ok(column_sequence(&t, ell))?;
                passed(&ok(c.verify(&rec))?, || format!("{s} column l = {ell}"))?;
            }
        }
        let t = build(&lucas(), 7)?;
        let c = ok(column_sequence(&t, 0))?;
        ensure(c.terms == ints(&[2, -2, 2, -2]), || {
            "Lucas central column".into()
        })?;
        let rec = column_recurrence(&lucas());
        ensure(rec.coefficients() == ints(&[-2, -1]).as_slice(), || {
            "Lucas column coefficients".into()
        })?;
        passed(&ok(c.verify(&rec))?, || {
            "Lucas central column recurrence".into()
        })
    };
    report(6, "parallel-column recurrence for l in -3..=3", run());
}

fn closed_form_matches(s: &TriangleSpec, case: ClosedFormCase) -> Check {
    let cf = ok(ClosedForm::new(s))?;
    let found = cf.data().case;
    ensure(found == case, || format!("{s}: case {found:?}"))?;
    let t = build(s, 16)?;
    for n in 0..=15 {
        let row = ok(cf.row(n))?;
        for (k, e) in row.into_iter().enumerate() {
            ensure(&e == t.entry(n, k), || format!("{s} at ({n},{k}): {e}"))?;
            if case == ClosedFormCase::DoublyDegenerate && k >= 2 {
                ensure(e.is_zero(), || format!("{s} at ({n},{k}) nonzero"))?;
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_07_closed_forms() {
    let run = || -> Check {
        let mut g = Gen::new(7);
        let mut generic = 0;
        while generic < 100 {
            let s = g.spec();
            if s.constants().delta().is_zero() {
                continue;
            }
            closed_form_matches(&s, ClosedFormCase::Generic)?;
            generic += 1;
        }
        let mut repeated = 0;
        while repeated < 30 {
            let (a0, a1) = g.seeds();
            let alpha = g.nonzero();
            let beta = -(&alpha * &alpha) * rat((1, 4));
            let s = ok(TriangleSpec::new(
                a0,
                a1,
                alpha,
                beta,
                g.nonzero(),
                g.nonzero(),
            ))?;
            if s.constants().a().is_zero() {
                continue;
            }
            closed_form_matches(&s, ClosedFormCase::RepeatedRoot)?;
            repeated += 1;
        }
        for _ in 0..30 {
            let (a0, a1) = g.seeds();
            let (alpha, u) = (g.nonzero(), g.nonzero());
            let beta = -(&alpha * &alpha) * rat((1, 4));
            let v = -(&u * &alpha) * rat((1, 2));
            let s = ok(TriangleSpec::new(a0, a1, alpha, beta, u, v))?;
            closed_form_matches(&s, ClosedFormCase::DoublyDegenerate)?;
        }
        for _ in 0..50 {
            let (a0, a1) = g.seeds();
            let (alpha, beta) = (g.nonzero(), g.nonzero());
            let s = ok(case1_spec(&a0, &a1, &alpha, &beta))?;
            let t = build(&s, 16)?;
            for n in 1..=15 {
                for k in 0..=n {
                    let e = ok(girard_waring_entry(&a0, &a1, &alpha, &beta, n, k))?;
                    ensure(&e == t.entry(n, k), || {
                        format!("{s} binomial-sum form at ({n},{k})")
                    })?;
                }
            }
            for n in 0..=15 {
                ok(rising_diagonal_constant(&a0, &a1, &alpha, &beta, n))?;
            }
        }
        Ok(())
    };
    report(
        7,
        "closed forms equal construction in all three cases",
        run(),
    );
}

#[test]
fn criterion_08_classification() {
    let run = || -> Check {
        let mut g = Gen::new(8);
        let mut instances = Vec::new();
        for tag in [FamilyTag::F1, FamilyTag::F2, FamilyTag::F3] {
            let mut made = 0;
            while made < 30 {
                let (a0, a1) = (g.nonzero(), g.nonzero());
                let fams = ok(symmetric_families(&a0, &a1))?;
                let fam = fams.iter().find(|f| f.tag == tag).ok_or("family missing")?;
                let free = g.nonzero();
                let Ok(s) = fam.instantiate(Some(&free)) else {
                    continue;
                };
                ensure(is_symmetric(&build(&s, 12)?).passed(), || {
                    format!("{tag} instance {s} not symmetric")
                })?;
                instances.push(s);
                made += 1;
            }
        }

        // half uniform, half family members with a coin-flip perturbation
        let mut symmetric_seen = 0;
        for i in 0..200 {
            let s = if i % 2 == 0 {
                g.spec()
            } else {
                let base = &instances[g.0.gen_range(0..instances.len())];
                if g.0.gen_bool(0.5) {
                    base.clone()
                } else {
                    let bump = rat(g.small_int());
                    let u = base.u() + &bump;
                    let v = if u.is_zero() {
                        base.v().clone()
                    } else {
                        base.v() + bump
                    };
                    let u = if u.is_zero() { base.u().clone() } else { u };
                    ok(TriangleSpec::new(
                        base.a0().clone(),
                        base.a1().clone(),
                        base.alpha().clone(),
                        base.beta().clone(),
                        u,
                        if v.is_zero() { base.v().clone() } else { v },
                    ))?
                }
            };
            if s.a0().is_zero() {
                continue;
            }
            let brute = is_symmetric(&build(&s, 12)?).passed();
            let by_params = ok(check_symmetry_conditions(&s))?.is_member();
            ensure(brute == by_params, || {
                format!("{s}: rows say {brute}, parameters say {by_params}")
            })?;
            symmetric_seen += usize::from(brute);
        }
        ensure(symmetric_seen > 0, || {
            "sample contained no symmetric triangle".into()
        })?;

        for _ in 0..30 {
            let (a0, a1) = g.seeds();
            let (alpha, beta) = (g.nonzero(), g.nonzero());
            let t = build(&ok(case1_spec(&a0, &a1, &alpha, &beta))?, 10)?;
            ensure(sum_above_check(&t, Orientation::Case1).passed(), || {
                "case 1".into()
            })?;
            for s in ok(case2_specs(&a0, &a1, &alpha, &beta))?.specs {
                let t = build(&s, 10)?;
                ensure(sum_above_check(&t, Orientation::Case2).passed(), || {
                    format!("case 2 {s}")
                })?;
            }
        }
        // constructed rational and degenerate case-2 inputs
        for (alpha, beta) in [(1, 1), (3, -1), (4, -2), (-2, 4), (5, -4)] {
            let sol = ok(case2_specs(&rat(1), &rat(3), &rat(alpha), &rat(beta)))?;
            ensure(!sol.specs.is_empty(), || {
                format!("no case-2 spec for ({alpha}, {beta})")
            })?;
            for s in sol.specs {
                ensure(
                    sum_above_check(&build(&s, 10)?, Orientation::Case2).passed(),
                    || format!("case 2 {s}"),
                )?;
            }
        }

        for a0 in [rat(1), rat(2), rat(-3), rat((5, 7))] {
            let specs = ok(symmetric_sum_above_specs(&a0))?;
            let half = &a0 * rat((1, 2));
            let first = value_set(&build(&specs[0], 12)?);
            let stated = [a0.clone(), half.clone(), -half.clone()]
                .into_iter()
                .collect();
            ensure(
                first.is_subset(&stated) && first.contains(&a0) && first.contains(&-half),
                || format!("first sum-above triangle values {first:?}"),
            )?;
            let second = value_set(&build(&specs[1], 12)?);
            ensure(second == [a0.clone()].into_iter().collect(), || {
                format!("second values {second:?}")
            })?;
        }
        Ok(())
    };
    report(8, "symmetric and sum-of-above classification", run());
}

#[test]
fn criterion_09_pascal_impossibility() {
    let run = || -> Check {
        let r = ok(pascal_impossibility_report())?;
        let a = &r.branch_a;
        ensure(a.n == 2 && a.forced == rat(0) && a.pascal == rat(1), || {
            format!("branch A {a:?}")
        })?;
        let b = &r.branch_b;
        ensure(
            b.v_from_family == rat(2) && b.v_from_sum_above == rat(1),
            || format!("branch B {b:?}"),
        )?;
        ensure(r.grid.matches.is_empty(), || {
            format!("grid matches {:?}", r.grid.matches)
        })?;
        ensure(r.grid.specs_tested > 0, || {
            "grid search tested nothing".into()
        })
    };
    report(
        9,
        "Pascal's triangle is not a binomial interpolated triangle",
        run(),
    );
}

fn matched(terms: &[Rational], id: &str) -> Check {
    ensure(terms.len() >= 12, || format!("only {} terms", terms.len()))?;
    match prefix_matches(terms) {
        MatchOutcome::Matched { ids } if ids.contains(&id) => Ok(()),
        other => Err(format!("{id} not matched: {other:?}")),
    }
}

#[test]
fn criterion_10_oeis_regressions() {
    let run = || -> Check {
        matched(&left_diagonal(&build(&lucas(), 16)?).terms, "A000032")?;
        matched(&build(&spec([1, 1, 1, 1, 1, 1]), 6)?.flatten(), "A199512")?;
        matched(
            &left_diagonal(&build(&spec([0, 1, 3, 1, 3, 1]), 14)?).terms,
            "A006190",
        )?;
        let t = build(&spec([1, 2, 2, -1, 2, -1]), 16)?;
        let mut flat = t.flatten();
        flat.truncate(21);
        matched(&flat, "A094727")?;
        matched(&left_diagonal(&t).terms, "A000027")
    };
    report(10, "OEIS prefix regressions", run());
}
