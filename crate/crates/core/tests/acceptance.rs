//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cpplab::charsum::{char_sum_uniformity, pp_by_char_sums};
use cpplab::dickson::{
    dickson_coeffs, dickson_eval, dickson_is_pp, dickson_recurrence_coeffs, reversed_fraction_coeff,
};
use cpplab::family::{Family, FamilyClass, FamilySpec};
use cpplab::modring::InversePath;
use cpplab::monomial::{DensePoly, FieldMap, Monomial, PowerMap};
use cpplab::verify::{is_permutation, verify_family, wan_check, VerifyOptions, VerifyReport, WanMap};
use cpplab::{BaseField, FieldCtx, FieldElem, FiniteField, Limits, ModulusVariant};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Instance {
    label: String,
    family: Family,
    ctx: FieldCtx,
    report: VerifyReport,
    elapsed: Duration,
}

fn run_instance(spec: FamilySpec) -> Result<Instance, String> {
    let label = format!(
        "{} p={} m={}{} {}",
        spec.class,
        spec.p,
        spec.m,
        spec.s.map_or(String::new(), |s| format!(" s={s}")),
        spec.modulus
    );
    let start = Instant::now();
    let family = spec.validate().map_err(|e| format!("{label}: {e}"))?;
    let ctx = family.context().map_err(|e| format!("{label}: {e}"))?;
    let report = verify_family(&ctx, &family, &VerifyOptions { workers: 1, scan: true })
        .map_err(|e| format!("{label}: {e}"))?;
    Ok(Instance {
        label,
        family,
        ctx,
        report,
        elapsed: start.elapsed(),
    })
}

fn c1_specs() -> Vec<FamilySpec> {
    [1, 3, 5].into_iter().map(FamilySpec::c1).collect()
}

fn variant_specs() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for modulus in [ModulusVariant::X2Plus2XPlus2, ModulusVariant::X2PlusXPlus2] {
        for m in [1, 3] {
            out.push(FamilySpec::c1_with_modulus(m, modulus));
        }
    }
    out
}

fn c2_specs() -> Vec<FamilySpec> {
    [1, 3].into_iter().map(FamilySpec::c2).collect()
}

/// The C3 grid, with the raw list and the subset `validate` accepts.
fn c3_specs() -> (Vec<FamilySpec>, Vec<FamilySpec>) {
    let raw: Vec<FamilySpec> = [(3, 1, 2), (3, 3, 2), (7, 1, 2), (7, 1, 4), (19, 1, 2)]
        .into_iter()
        .chain([2, 4, 8, 16].into_iter().map(|s| (31, 1, s)))
        .map(|(p, m, s)| FamilySpec::c3(p, m, s))
        .collect();
    let valid = raw.iter().copied().filter(|s| s.validate().is_ok()).collect();
    (raw, valid)
}

type Grid = Vec<Result<Instance, String>>;

/// Every instance of criteria 1-4, verified once.
fn grid() -> &'static Grid {
    static GRID: OnceLock<Grid> = OnceLock::new();
    GRID.get_or_init(|| {
        c1_specs()
            .into_iter()
            .chain(variant_specs())
            .chain(c2_specs())
            .chain(c3_specs().1)
            .map(run_instance)
            .collect()
    })
}

fn instances_for(specs: &[FamilySpec]) -> Result<Vec<&'static Instance>, String> {
    specs
        .iter()
        .map(|spec| {
            grid()
                .iter()
                .find_map(|r| match r {
                    Ok(i) if i.family.spec() == spec => Some(Ok(i)),
                    Err(e) if e.starts_with(&format!("{} p={} m={}", spec.class, spec.p, spec.m)) => {
                        Some(Err(e.clone()))
                    }
                    _ => None,
                })
                .unwrap_or_else(|| Err(format!("{spec:?} missing from grid")))
        })
        .collect()
}

/// Admissible set size, `is_cpp` on every `v`, and agreement with the trace/norm definition.
fn check_sweep(inst: &Instance, expected: u64) -> Result<(), String> {
    let r = &inst.report;
    ensure!(r.count as u64 == expected, "{}: {} admissible v, expected {expected}", inst.label, r.count);
    for res in &r.results {
        ensure!(res.is_pp && res.is_cpp, "{}: v={:?} is not complete", inst.label, res.v);
    }
    let by_rule = inst.family.admissible_v(&inst.ctx).map_err(|e| e.to_string())?;
    if inst.ctx.q() <= 729 {
        let by_def = inst.family.admissible_by_definition(&inst.ctx).map_err(|e| e.to_string())?;
        ensure!(by_rule == by_def, "{}: coordinate rule differs from definition", inst.label);
    }
    Ok(())
}

/// Reference check by plain evaluation and hashing, on up to `limit` admissible `v`.
fn naive_cpp(inst: &Instance, limit: usize) -> Result<(), String> {
    let ctx = &inst.ctx;
    let vs = inst.family.admissible_v(ctx).map_err(|e| e.to_string())?;
    let step = (vs.len() / limit.max(1)).max(1);
    for &v in vs.iter().step_by(step) {
        let c = ctx.inv(v).map_err(|e| e.to_string())?;
        let d = inst.family.d().to_u64().unwrap() % (ctx.q() - 1);
        let f = |x: FieldElem| ctx.mul(c, ctx.pow_u64(x, d));
        ensure!(common::naive_is_bijection(ctx, f), "{}: f not bijective at {v:?}", inst.label);
        ensure!(
            common::naive_is_bijection(ctx, |x| ctx.add(f(x), x)),
            "{}: f+x not bijective at {v:?}",
            inst.label
        );
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let insts = instances_for(&c1_specs())?;
    let mut notes = Vec::new();
    for inst in &insts {
        let m = inst.family.spec().m;
        check_sweep(inst, 3u64.pow(m) - 1)?;
        naive_cpp(inst, if m <= 3 { usize::MAX } else { 6 })?;
        let limit = if m <= 3 { Duration::from_secs(1) } else { Duration::from_secs(30) };
        ensure!(inst.elapsed < limit, "{}: took {:?}, limit {limit:?}", inst.label, inst.elapsed);
        notes.push(format!("m={m}: {} v in {} ms", inst.report.count, inst.elapsed.as_millis()));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let insts = instances_for(&variant_specs())?;
    for inst in &insts {
        let m = inst.family.spec().m;
        check_sweep(inst, 3u64.pow(m) - 1)?;
        naive_cpp(inst, usize::MAX)?;
        let k = inst.ctx.base();
        for v in inst.family.admissible_v(&inst.ctx).map_err(|e| e.to_string())? {
            let ok = match inst.family.spec().modulus {
                ModulusVariant::X2Plus2XPlus2 => v.a0 == v.a1,
                _ => v.a1 == k.mul(k.constant(2), v.a0),
            };
            ensure!(ok, "{}: {v:?} breaks the coordinate rule", inst.label);
        }
    }
    Ok(format!("{} variant sweeps", insts.len()))
}

fn criterion_3() -> Outcome {
    let insts = instances_for(&c2_specs())?;
    for inst in &insts {
        let m = inst.family.spec().m;
        check_sweep(inst, 2 * (3u64.pow(m) - 1))?;
        naive_cpp(inst, usize::MAX)?;
        let by_def = inst.family.admissible_by_definition(&inst.ctx).map_err(|e| e.to_string())?;
        let by_rule = inst.family.admissible_v(&inst.ctx).map_err(|e| e.to_string())?;
        ensure!(by_def == by_rule, "{}: trace definition set != coordinate set", inst.label);
    }
    Ok("m=1: 4 v, m=3: 52 v; trace definition set = coordinate set".into())
}

fn criterion_4() -> Outcome {
    let (raw, valid) = c3_specs();
    let insts = instances_for(&valid)?;
    let mut total = Duration::ZERO;
    for inst in &insts {
        let sp = inst.family.spec();
        let s = sp.s.unwrap();
        let order = sp.p.pow(sp.m) + 1;
        check_sweep(inst, order / s * (s - 1))?;
        naive_cpp(inst, usize::MAX)?;
        let divisor = inst.family.wan_divisor().unwrap();
        for res in &inst.report.results {
            ensure!(res.wan_ok == Some(true), "{}: Wan fails at {:?}", inst.label, res.v);
            let v = inst.ctx.decode(&res.v).map_err(|e| e.to_string())?;
            // (-v)^{(p^m+1)/s} != 1
            ensure!(
                inst.ctx.pow_u64(inst.ctx.neg(v), divisor) != FieldElem::ONE,
                "{}: condition (i) fails at {v:?}",
                inst.label
            );
            let exhaustive = is_permutation(&inst.ctx, &WanMap::new(&inst.ctx, divisor, v))
                .map_err(|e| e.to_string())?;
            ensure!(exhaustive, "{}: Wan-shape map not bijective at {v:?}", inst.label);
        }
        total += inst.elapsed;
    }
    ensure!(total < Duration::from_secs(5), "C3 grid took {total:?}");
    Ok(format!(
        "{} of {} grid points admitted, {} ms",
        valid.len(),
        raw.len(),
        total.as_millis()
    ))
}

fn all_instances() -> Result<Vec<&'static Instance>, String> {
    grid().iter().map(|r| r.as_ref().map_err(|e| e.clone())).collect()
}

fn pow_i(b: i128, e: u32) -> i128 {
    b.pow(e)
}

fn criterion_5() -> Outcome {
    let mut closed = 0;
    let mut generic = 0;
    for inst in all_instances()? {
        let sp = *inst.family.spec();
        let n = inst.ctx.q() - 1;
        let d = inst.family.d().to_u64().unwrap();
        let inv = inst.family.inverse();
        let e = inv.value.to_u64().unwrap();
        ensure!(common::brute_inverse(d, n) == Some(e), "{}: e = {e} is not d^-1", inst.label);
        let (p, m) = (sp.p as i128, sp.m);
        let pm = pow_i(p, m);
        let expected_raw: Option<i128> = match sp.class {
            FamilyClass::C1 => Some(2 * pow_i(3, 2 * m - 1) - pow_i(3, m - 1)),
            FamilyClass::C2 => None,
            FamilyClass::C3 if sp.s == Some(2) && sp.p == 3 => Some(pow_i(3, 2 * m - 1) + 2 * pow_i(3, m - 1)),
            FamilyClass::C3 if sp.s == Some(2) && sp.p % 12 == 7 => {
                let num = 3 - 2 * (pm - 1) * (2 * pm + 1);
                ensure!(num % 3 == 0, "{}: numerator not divisible by 3", inst.label);
                Some(num / 3)
            }
            FamilyClass::C3 => None,
        };
        match (sp.class, expected_raw) {
            (FamilyClass::C2, _) => {
                // e * 5 = -(2*3^m - 3) mod q-1
                let lhs = (e as i128 * 5).rem_euclid(n as i128);
                let rhs = (-(2 * pow_i(3, m) - 3)).rem_euclid(n as i128);
                ensure!(lhs == rhs, "{}: 5e != -(2*3^m-3)", inst.label);
                ensure!(inv.path == InversePath::ClosedForm, "{}: expected closed form", inst.label);
                closed += 1;
            }
            (_, Some(raw)) => {
                ensure!(inv.path == InversePath::ClosedForm, "{}: expected closed form", inst.label);
                ensure!(
                    inv.integer_value == Some(BigInt::from(raw)),
                    "{}: raw closed form {:?} != {raw}",
                    inst.label,
                    inv.integer_value
                );
                ensure!(raw.rem_euclid(n as i128) == e as i128, "{}: closed form not reduced", inst.label);
                closed += 1;
            }
            (_, None) => {
                ensure!(inv.path == InversePath::Generic, "{}: expected generic path", inst.label);
                generic += 1;
            }
        }
        for res in &inst.report.results {
            ensure!(
                res.inverse_exponent_ok && res.composition_ok && res.inverse_is_cpp,
                "{}: inverse checks fail at {:?}",
                inst.label,
                res.v
            );
        }
        // Reference composition by plain evaluation on a few v.
        let ctx = &inst.ctx;
        for &v in inst.family.admissible_v(ctx).map_err(|e| e.to_string())?.iter().take(3) {
            let fwd = inst.family.forward_monomial(ctx, v).map_err(|e| e.to_string())?;
            let back = inst.family.inverse_monomial(ctx, v).map_err(|e| e.to_string())?;
            let ve = ctx.pow_biguint(v, &inv.value);
            for i in (0..ctx.q()).step_by(((ctx.q() / 2000) as usize).max(1)) {
                let x = ctx.element(i);
                let y = ctx.mul(ve, ctx.pow_u64(x, e));
                ensure!(back.eval(ctx, x) == y, "{}: inverse monomial mismatch", inst.label);
                ensure!(fwd.eval(ctx, y) == x, "{}: f(f^-1(x)) != x", inst.label);
            }
            let inverse_cpp = common::naive_is_bijection(ctx, |x| back.eval(ctx, x))
                && common::naive_is_bijection(ctx, |x| ctx.add(back.eval(ctx, x), x));
            ensure!(inverse_cpp, "{}: inverse not complete at {v:?}", inst.label);
        }
    }
    Ok(format!("{closed} closed-form and {generic} generic inverses"))
}

fn oracles_agree<F: FiniteField, M: FieldMap<F>>(field: &F, map: &M, per_gamma: bool) -> Result<bool, String> {
    let by_image = is_permutation(field, map).map_err(|e| e.to_string())?;
    let by_sums = pp_by_char_sums(field, map).map_err(|e| e.to_string())?;
    let by_hash = common::naive_is_bijection(field, |x| map.eval(field, x));
    ensure!(by_image == by_sums && by_sums == by_hash, "image {by_image}, sums {by_sums}, hash {by_hash}");
    if per_gamma {
        let mut direct = true;
        for g in 1..field.order() {
            let sum = char_sum_uniformity(field, map, field.element(g)).map_err(|e| e.to_string())?;
            direct &= sum.vanishes;
        }
        ensure!(direct == by_sums, "per-gamma sums {direct}, transform {by_sums}");
    }
    Ok(by_image)
}

fn equivalence_run<F: FiniteField>(field: &F, rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let q = field.order();
    let mut pp = 0;
    for k in 0..200 {
        let c = field.element(rng.gen_range(1..q));
        let e = rng.gen_range(1..q - 1);
        let mono = Monomial::new(field, c, &BigUint::from(e)).map_err(|e| e.to_string())?;
        pp += oracles_agree(field, &mono, k % 10 == 0).map_err(|w| format!("x^{e}: {w}"))? as usize;
    }
    for k in 0..50 {
        let deg = rng.gen_range(1..=16);
        let coeffs: Vec<F::Elem> = (0..=deg).map(|_| field.element(rng.gen_range(0..q))).collect();
        let poly = DensePoly { coeffs };
        pp += oracles_agree(field, &poly, k % 5 == 0).map_err(|w| format!("poly #{k}: {w}"))? as usize;
    }
    Ok((250, pp))
}

fn wan_sweep<F: FiniteField>(field: &F) -> Result<usize, String> {
    let n = field.order() - 1;
    let mut count = 0;
    for d in (1..=n).filter(|d| n % d == 0) {
        for i in 1..field.order() {
            let a = field.element(i);
            let map = WanMap::new(field, d, a);
            let wan = wan_check(field, d, a).map_err(|e| e.to_string())?;
            let image = is_permutation(field, &map).map_err(|e| e.to_string())?;
            let sums = pp_by_char_sums(field, &map).map_err(|e| e.to_string())?;
            ensure!(wan == image && image == sums, "q={} d={d} a={a:?}: wan={wan} image={image} sums={sums}", field.order());
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let f27 = BaseField::new(3, 3, Limits::default()).map_err(|e| e.to_string())?;
    let f49 = FieldCtx::new(7, 1, ModulusVariant::Auto).map_err(|e| e.to_string())?;
    let (n27, pp27) = equivalence_run(&f27, &mut rng)?;
    let (n49, pp49) = equivalence_run(&f49, &mut rng)?;
    let mut wan = 0;
    for (p, v) in [(3, ModulusVariant::X2Plus1), (5, ModulusVariant::Auto), (7, ModulusVariant::Auto)] {
        wan += wan_sweep(&FieldCtx::new(p, 1, v).map_err(|e| e.to_string())?)?;
    }
    // randomized over F_729
    let f729 = FieldCtx::new(3, 3, ModulusVariant::X2Plus1).map_err(|e| e.to_string())?;
    let divisors: Vec<u64> = (1..=728).filter(|d| 728 % d == 0).collect();
    for _ in 0..60 {
        let d = divisors[rng.gen_range(0..divisors.len())];
        let a = f729.element(rng.gen_range(1..729));
        let map = WanMap::new(&f729, d, a);
        let w = wan_check(&f729, d, a).map_err(|e| e.to_string())?;
        let i = is_permutation(&f729, &map).map_err(|e| e.to_string())?;
        let s = pp_by_char_sums(&f729, &map).map_err(|e| e.to_string())?;
        ensure!(w == i && i == s, "F_729 d={d} a={a:?}: wan={w} image={i} sums={s}");
    }
    Ok(format!(
        "F_27: {n27} maps ({pp27} PP), F_49: {n49} maps ({pp49} PP), {wan} Wan cases agree"
    ))
}

fn criterion_7() -> Outcome {
    // recurrence vs closed form
    for p in [3u32, 7] {
        for n in 1..=50u64 {
            let oracle = common::bivariate_dickson(n);
            let closed = dickson_coeffs(p, n).map_err(|e| e.to_string())?;
            for (&(xp, ap), &c) in &oracle {
                ensure!(xp + 2 * ap == n, "n={n}: stray term x^{xp} a^{ap}");
                let sign = if ap % 2 == 0 { 1 } else { -1 };
                let want = (sign * c).rem_euclid(p as i128) as u32;
                ensure!(closed[ap as usize] == want, "p={p} n={n} i={ap}: {} vs {want}", closed[ap as usize]);
            }
            for (i, &c) in closed.iter().enumerate() {
                if c != 0 {
                    ensure!(oracle.contains_key(&(n - 2 * i as u64, i as u64)), "p={p} n={n}: extra term i={i}");
                }
            }
            let lib_rec = dickson_recurrence_coeffs(n);
            for (i, c) in lib_rec.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let o = oracle.get(&(n - 2 * i as u64, i as u64)).copied().unwrap_or(0);
                ensure!(*c == BigInt::from(sign * o), "n={n}: library recurrence differs at i={i}");
            }
        }
    }
    // functional equation over F_81 = F_9(alpha)
    let f81 = FieldCtx::new(3, 2, ModulusVariant::Auto).map_err(|e| e.to_string())?;
    let ys: Vec<FieldElem> = f81.enumerate().map_err(|e| e.to_string())?.into_iter().skip(1).collect();
    for ai in 1..9 {
        let a = f81.embed(f81.base().element(ai));
        for &y in &ys {
            let yi = f81.inv(y).map_err(|e| e.to_string())?;
            let x = f81.add(y, f81.mul(a, yi));
            let ay = f81.mul(a, yi);
            for n in 0..=12u64 {
                let lhs = dickson_eval(&f81, n, x, a);
                let rhs = f81.add(f81.pow_u64(y, n), f81.pow_u64(ay, n));
                ensure!(lhs == rhs, "functional equation fails: n={n} a={a:?} y={y:?}");
            }
        }
    }
    // permutation criterion vs exhaustive bijectivity
    let f9 = FieldCtx::new(3, 1, ModulusVariant::X2Plus1).map_err(|e| e.to_string())?;
    let f27 = BaseField::new(3, 3, Limits::default()).map_err(|e| e.to_string())?;
    fn gcd_rule<F: FiniteField>(field: &F) -> Result<(), String> {
        let q = BigUint::from(field.order());
        for n in 1..=30u64 {
            let predicted = dickson_is_pp(n, &q);
            for ai in 1..field.order() {
                let a = field.element(ai);
                let actual = common::naive_is_bijection(field, |x| dickson_eval(field, n, x, a));
                ensure!(predicted == actual, "q={q} n={n} a={a:?}: gcd test {predicted}, bijective {actual}");
            }
        }
        Ok(())
    }
    gcd_rule(&f9)?;
    gcd_rule(&f27)?;
    // D_4 = x^4 - 4a x^2 + 2a^2, with no a^2 x term
    let d4 = common::bivariate_dickson(4);
    ensure!(d4.get(&(0, 2)) == Some(&2), "D_4 constant term is not 2a^2");
    ensure!(!d4.contains_key(&(1, 2)), "D_4 has an a^2 x term");
    ensure!(dickson_coeffs(3, 4).unwrap() == vec![1, 1, 2], "D_4 over F_3 is not x^4 - a x^2 + 2a^2");
    // the (n-i)/n orientation already fails at D_2 = x^2 - 2a
    let (num, den) = reversed_fraction_coeff(2, 1);
    ensure!(num == BigUint::from(1u32) && den == BigUint::from(2u32), "(n-i)/n coefficient of D_2 is not 1/2");
    for n in 2..=50u64 {
        let rec = common::bivariate_dickson(n);
        let disagrees = (0..=n / 2).any(|i| {
            let (num, den) = reversed_fraction_coeff(n, i);
            let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
            let want = sign * rec.get(&(n - 2 * i, i)).copied().unwrap_or(0);
            den != BigUint::from(1u32) || BigInt::from(num) != BigInt::from(want)
        });
        ensure!(disagrees, "n={n}: the (n-i)/n fraction reproduces the recurrence");
    }
    Ok("n<=50 coefficients, functional equation on F_81, criterion on F_9/F_27, both typo checks hold".into())
}

fn criterion_8() -> Outcome {
    fn sweep<F: FiniteField>(field: &F) -> Result<usize, String> {
        let n = field.order() - 1;
        let mut units = 0;
        for e in 1..=n {
            let predicted = common::gcd(e, n) == 1;
            let by_image = is_permutation(field, &PowerMap(e)).map_err(|e| e.to_string())?;
            let by_hash = common::naive_is_bijection(field, |x| common::slow_pow(field, x, e));
            ensure!(
                predicted == by_image && by_image == by_hash,
                "q={} e={e}: gcd {predicted}, image {by_image}, hash {by_hash}",
                field.order()
            );
            units += predicted as usize;
        }
        Ok(units)
    }
    let a = sweep(&FieldCtx::new(3, 1, ModulusVariant::X2Plus1).map_err(|e| e.to_string())?)?;
    let b = sweep(&BaseField::new(3, 3, Limits::default()).map_err(|e| e.to_string())?)?;
    let c = sweep(&FieldCtx::new(7, 1, ModulusVariant::Auto).map_err(|e| e.to_string())?)?;
    Ok(format!("bijective exponents: F_9 {a}/8, F_27 {b}/26, F_49 {c}/48"))
}

fn criterion_9() -> Outcome {
    let mut equal = 0;
    let mut strict = Vec::new();
    let insts = all_instances()?;
    for inst in &insts {
        let scan = inst
            .report
            .scan
            .as_ref()
            .ok_or_else(|| format!("{}: no scan", inst.label))?;
        ensure!(scan.superset_ok, "{}: admissible set not inside scan", inst.label);
        ensure!(scan.count >= inst.report.count, "{}: scan smaller than admissible set", inst.label);
        // scanned extras really are complete
        for enc in scan.extra.iter().take(4) {
            let v = inst.ctx.decode(enc).map_err(|e| e.to_string())?;
            let c = inst.ctx.inv(v).map_err(|e| e.to_string())?;
            let d = inst.family.d().to_u64().unwrap() % (inst.ctx.q() - 1);
            let f = |x| inst.ctx.mul(c, inst.ctx.pow_u64(x, d));
            ensure!(
                common::naive_is_bijection(&inst.ctx, f)
                    && common::naive_is_bijection(&inst.ctx, |x| inst.ctx.add(f(x), x)),
                "{}: scanned v={v:?} is not complete",
                inst.label
            );
        }
        if scan.equal {
            equal += 1;
        } else {
            strict.push(format!("{} ({} vs {})", inst.label, scan.count, inst.report.count));
        }
    }
    Ok(format!(
        "{} instances, {equal} exact, strict supersets: [{}]",
        insts.len(),
        strict.join("; ")
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "C1 sweep, m in {1,3,5}", criterion_1),
        (2, "C1 over x2+2x+2 and x2+x+2", criterion_2),
        (3, "C2 sweep and admissible-set forms", criterion_3),
        (4, "C3 grid with Wan criterion", criterion_4),
        (5, "inverse exponents, composition, inverse complete", criterion_5),
        (6, "oracle equivalence", criterion_6),
        (7, "Dickson suite", criterion_7),
        (8, "monomial gcd criterion", criterion_8),
        (9, "scan contains admissible set", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {n} PASS [{name}] {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL [{name}] {why} ({ms} ms)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
