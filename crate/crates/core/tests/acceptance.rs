//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Seeds are fixed so every run checks the same cases.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{count_lines, subset_sums_divisible, Fp, Q};
use jl_core::adele::{idele_norm, DefaultKind, Real, RestrictedElement};
use jl_core::finitetf::{
    compare_models, matching_from_map, models, transport_function, Cyc, FiniteModel, TestFunction,
};
use jl_core::localpoly::{factor_degrees, is_u_compatible};
use jl_core::matrix::QMatrix;
use jl_core::poly::MonicPoly;
use jl_core::quatcsa::{
    candidate_places, eval_in_algebra, eval_on_split, hilbert_symbol, ramified_places, reduced_char_poly_matrix,
    reduced_char_poly_quat, QuatMatrix, QuaternionAlgebra,
};
use jl_core::satake::{
    central_inverse, generator, independence_witness, trace_unramified, HeckeElement, PlaceSpec, PlacedFamily,
    SatakeParams, WitnessResult,
};
use jl_core::transfer::{
    class_of_matrix, companion_of, levi_correspondence, local_transferable, ConjClassTag, Direction, LeviShape,
};
use jl_core::{Error, Place};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_q(r: &mut ChaCha8Rng, bound: i64) -> Q {
    let n = r.gen_range(-bound..=bound);
    let d = r.gen_range(1..=bound.max(1));
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn rand_nonzero_q(r: &mut ChaCha8Rng, bound: i64) -> Q {
    loop {
        let x = rand_q(r, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

// 1 ------------------------------------------------------------------------

fn trace_identity() -> Outcome {
    let start = Instant::now();
    let models = models::all_standard();
    ensure(models.len() >= 5, || "fewer than five models".into())?;
    ensure(models.iter().any(|m| m.name() == "SL(2,3)/unipotent"), || "no nonabelian model with central Z".into())?;
    let mut r = rng(1);
    let mut checked = 0;
    for m in &models {
        for _ in 0..100 {
            let f = TestFunction::random_gaussian(m.group().order(), 5, &mut r);
            let s = m.spectral_trace(&f).map_err(|e| e.to_string())?;
            let g = m.geometric_trace(&f).map_err(|e| e.to_string())?;
            let k = m.kernel_trace(&f).map_err(|e| e.to_string())?;
            ensure(s.value == g.total.value && g.total.value == k.value, || {
                format!("{}: spectral {} geometric {} kernel {}", m.name(), s.value, g.total.value, k.value)
            })?;
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{} models, {checked} functions, exact equality, {t:.2?}", models.len()))
}

// 2 ------------------------------------------------------------------------

/// m_χ = ⟨Res_H χ, λ⟩_H for H = ΓZ and λ(γz) = ω(z), by Frobenius
/// reciprocity, computed directly from the group data.
fn induced_multiplicities(m: &FiniteModel) -> Result<Vec<u64>, String> {
    let g = m.group();
    let mut lambda: BTreeMap<usize, Cyc> = BTreeMap::new();
    for &gamma in m.gamma() {
        for &z in m.center() {
            lambda.entry(g.mul(gamma, z)).or_insert_with(|| m.omega(z));
        }
    }
    let table = m.character_table().map_err(|e| e.to_string())?;
    (0..table.len())
        .map(|a| {
            let s = lambda.iter().fold(Cyc::zero(), |acc, (&h, l)| acc.add(&table.value(a, h).mul(&l.conj())));
            let s = s.div_int(lambda.len() as i128);
            match s.as_rational() {
                Some((n, 1)) if n >= 0 => Ok(n as u64),
                _ => Err(format!("{}: multiplicity of character {a} is {s}", m.name())),
            }
        })
        .collect()
}

fn decomposition() -> Outcome {
    let mut r = rng(1);
    let models = models::all_standard();
    for m in &models {
        let oracle = induced_multiplicities(m)?;
        let mults = m.multiplicities().map_err(|e| e.to_string())?;
        ensure(oracle == mults, || format!("{}: {mults:?} vs induced {oracle:?}", m.name()))?;
        let dim: u64 = mults.iter().enumerate().map(|(a, &k)| k * m.character_table().unwrap().degree(a) as u64).sum();
        ensure(dim == m.dimension() as u64, || format!("{}: degrees sum to {dim}", m.name()))?;
        for _ in 0..100 {
            let f = TestFunction::random_gaussian(m.group().order(), 5, &mut r);
            let d = m.spectral_decomposition(&f).map_err(|e| e.to_string())?;
            let sum = d.entries.iter().fold(Cyc::zero(), |acc, e| acc.add(&e.trace.mul_int(e.multiplicity as i128)));
            let s = m.spectral_trace(&f).map_err(|e| e.to_string())?;
            ensure(sum == s.value, || format!("{}: Σ m tr = {sum}, spectral {}", m.name(), s.value))?;
        }
    }
    let s3 = models::s3_a3();
    let t = s3.character_table().map_err(|e| e.to_string())?;
    let d = s3.spectral_decomposition(&TestFunction::delta(6, s3.group().identity())).map_err(|e| e.to_string())?;
    ensure(d.entries.len() == 2, || format!("S3/A3 has {} constituents", d.entries.len()))?;
    let mut kinds = Vec::new();
    for e in &d.entries {
        ensure(e.multiplicity == 1 && e.degree == 1, || format!("S3/A3 entry {e:?}"))?;
        let row: Vec<Cyc> = (0..6).map(|g| t.value(e.character, g).clone()).collect();
        if row.iter().all(|v| *v == Cyc::one()) {
            kinds.push("trivial");
        } else if (0..6).all(|g| {
            let sign = if s3.in_gamma(g) { Cyc::one() } else { Cyc::int(-1) };
            row[g] == sign
        }) {
            kinds.push("sign");
        }
    }
    kinds.sort_unstable();
    ensure(kinds == ["sign", "trivial"], || format!("S3/A3 constituents {kinds:?}"))?;
    Ok(format!("{} models against induced characters; S3/A3 = trivial + sign", models.len()))
}

// 3 ------------------------------------------------------------------------

fn product_formula() -> Outcome {
    let start = Instant::now();
    let mut r = rng(3);
    for _ in 0..1000 {
        let x = rand_nonzero_q(&mut r, 1_000_000);
        let g = RestrictedElement::diagonal(&x, DefaultKind::Unit).map_err(|e| e.to_string())?;
        let n = idele_norm(&g).map_err(|e| e.to_string())?;
        ensure(n == Real::Exact(Q::one()), || format!("|{x}|_A = {n:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("1000 rationals, {t:.2?}"))
}

// 4 and 5 ------------------------------------------------------------------

struct FactorCase {
    coeffs: Vec<i64>,
    p: u64,
    oracle: Vec<usize>,
}

fn factor_corpus() -> Vec<FactorCase> {
    let mut r = rng(4);
    let primes = [3u64, 5, 7, 11, 13];
    let mut out = Vec::new();
    while out.len() < 10_000 {
        let n = r.gen_range(1..=6);
        let mut coeffs: Vec<i64> = (0..n).map(|_| r.gen_range(-9..=9)).collect();
        coeffs.push(1);
        let p = *primes.choose(&mut r).unwrap();
        let red = Fp::from_ints(p, &coeffs);
        // P(0) != 0 is a precondition of factor_degrees at finite places.
        if coeffs[0] == 0 || !red.squarefree() {
            continue;
        }
        out.push(FactorCase { oracle: red.ddf(), coeffs, p });
    }
    out
}

fn factor_oracle(corpus: &[FactorCase]) -> Outcome {
    let mut inconclusive = 0;
    for c in corpus {
        let poly = MonicPoly::from_ints(&c.coeffs).unwrap();
        match factor_degrees(&poly, Place::Finite(c.p)) {
            Ok(s) => ensure(s.degrees == c.oracle && s.certified, || {
                format!("{poly} at {}: {:?} vs oracle {:?}", c.p, s.degrees, c.oracle)
            })?,
            Err(Error::Inconclusive { .. }) => inconclusive += 1,
            Err(e) => return Err(format!("{poly} at {}: {e}", c.p)),
        }
    }
    ensure(inconclusive == 0, || format!("{inconclusive} inconclusive"))?;
    Ok(format!("{} cases, 0 inconclusive", corpus.len()))
}

fn u_compat(corpus: &[FactorCase]) -> Outcome {
    let mut checks = 0;
    for c in corpus {
        let poly = MonicPoly::from_ints(&c.coeffs).unwrap();
        for u in 1..=poly.degree() {
            let got = is_u_compatible(&poly, u, Place::Finite(c.p)).map_err(|e| e.to_string())?;
            let want = subset_sums_divisible(&c.oracle, u);
            ensure(got == want, || format!("{poly}, u = {u}, p = {}: {got} vs {want}", c.p))?;
            checks += 1;
        }
    }
    let x2m3 = MonicPoly::from_ints(&[-3, 0, 1]).unwrap();
    let x2m2 = MonicPoly::from_ints(&[-2, 0, 1]).unwrap();
    ensure(is_u_compatible(&x2m3, 2, Place::Finite(7)) == Ok(true), || "X²-3 over Q_7".into())?;
    ensure(is_u_compatible(&x2m2, 2, Place::Finite(7)) == Ok(false), || "X²-2 over Q_7".into())?;
    Ok(format!("{checks} (P, u, p) checks; X²-3 yes, X²-2 no over Q_7"))
}

// 6 ------------------------------------------------------------------------

fn rand_elem(alg: &QuaternionAlgebra, r: &mut ChaCha8Rng) -> jl_core::quatcsa::QuatElement {
    alg.element([rand_q(r, 20), rand_q(r, 20), rand_q(r, 20), rand_q(r, 20)])
}

fn reduced_charpoly() -> Outcome {
    let mut r = rng(6);
    let mut algebras = vec![QuaternionAlgebra::hamilton()];
    for p in [3, 5, 7] {
        algebras.push(QuaternionAlgebra::local_division_model(p).map_err(|e| e.to_string())?);
    }
    for _ in 0..500 {
        for alg in &algebras {
            let x = rand_elem(alg, &mut r);
            let px = reduced_char_poly_quat(&x);
            ensure(px.degree() == 2 && eval_in_algebra(&x, &px).is_zero(), || format!("P_x(x) != 0 for {x:?}"))?;
        }
        let alg = &algebras[0];
        let x = rand_elem(alg, &mut r);
        let [a, b, c, d] = x.coords().clone();
        ensure(x.reduced_trace() == &a + &a, || "Hamilton trace".into())?;
        ensure(x.reduced_norm() == &a * &a + &b * &b + &c * &c + &d * &d, || "Hamilton norm".into())?;
        let px = reduced_char_poly_quat(&x);
        ensure(px.coeff(1) == -x.reduced_trace() && px.coeff(0) == x.reduced_norm(), || "P_x coefficients".into())?;
    }
    let mut matrices = 0;
    for k in 0..100 {
        let (alg, place) = match k % 3 {
            0 => (&algebras[1], Place::Finite(3)),
            1 => (&algebras[2], Place::Finite(5)),
            _ => (&algebras[3], Place::Finite(7)),
        };
        let rows = (0..2).map(|_| (0..2).map(|_| rand_elem(alg, &mut r)).collect()).collect();
        let g = QuatMatrix::new(alg.clone(), rows).map_err(|e| e.to_string())?;
        let pg = reduced_char_poly_matrix(&g, place).map_err(|e| format!("{e}"))?;
        ensure(pg.degree() == 4, || format!("degree {}", pg.degree()))?;
        ensure(eval_on_split(&g, &pg).is_zero(), || "P_g(g) != 0 on the splitting".into())?;
        matrices += 1;
    }
    Ok(format!("500 x {} algebras, {matrices} matrices over D_v of degree 4", algebras.len()))
}

// 7 ------------------------------------------------------------------------

fn hilbert_suite() -> Outcome {
    let mut r = rng(7);
    let extra = [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Finite(11), Place::Infinite];
    for _ in 0..500 {
        let (a, b, c) = (rand_nonzero_q(&mut r, 60), rand_nonzero_q(&mut r, 60), rand_nonzero_q(&mut r, 60));
        let mut places: BTreeSet<Place> = candidate_places(&a, &b).map_err(|e| e.to_string())?;
        places.extend(candidate_places(&a, &c).map_err(|e| e.to_string())?);
        places.extend(extra);
        let mut product = 1i8;
        for &v in &places {
            let ab = hilbert_symbol(&a, &b, v);
            ensure(ab == hilbert_symbol(&b, &a, v), || format!("symmetry ({a},{b})_{v}"))?;
            let bc = &b * &c;
            ensure(hilbert_symbol(&a, &bc, v) == ab * hilbert_symbol(&a, &c, v), || {
                format!("bimultiplicativity ({a}, {b}·{c})_{v}")
            })?;
            product *= ab;
        }
        ensure(product == 1, || format!("Π_v ({a},{b})_v = -1"))?;
        let alg = QuaternionAlgebra::new(a.clone(), b.clone()).map_err(|e| e.to_string())?;
        let ram = ramified_places(&alg).map_err(|e| e.to_string())?;
        ensure(ram.len() % 2 == 0, || format!("|Ram({a},{b})| = {}", ram.len()))?;
    }
    let ram = ramified_places(&QuaternionAlgebra::hamilton()).map_err(|e| e.to_string())?;
    let want: BTreeSet<Place> = [Place::Finite(2), Place::Infinite].into();
    ensure(ram.places() == &want, || format!("Ram(-1,-1) = {:?}", ram.places()))?;
    Ok("500 pairs; Ram(-1,-1) = {2, inf}".into())
}

// 8 ------------------------------------------------------------------------

fn rand_unitary(n: usize, q: u64, r: &mut ChaCha8Rng) -> SatakeParams {
    let xs = (0..n).map(|_| Complex64::from_polar(1.0, r.gen_range(0.0..std::f64::consts::TAU))).collect();
    SatakeParams::new(q, xs).unwrap()
}

fn rand_hecke(n: usize, q: u64, r: &mut ChaCha8Rng) -> HeckeElement {
    let mut f = HeckeElement::zero(n, q);
    for _ in 0..r.gen_range(1..=3) {
        let mut term = HeckeElement::constant(n, q, Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)));
        for _ in 0..r.gen_range(0..=2) {
            let k = r.gen_range(1..=n);
            term = term.mul(&generator(n, q, k).unwrap()).unwrap();
        }
        if r.gen_bool(0.3) {
            term = term.mul(&central_inverse(n, q).unwrap()).unwrap();
        }
        f = f.add(&term).unwrap();
    }
    f
}

fn satake_identities() -> Outcome {
    let mut r = rng(8);
    let qs = [2u64, 3, 4, 5, 7, 9];
    for _ in 0..100 {
        let (n, q) = (r.gen_range(1..=4), *qs.choose(&mut r).unwrap());
        let xs = (0..n).map(|_| Complex64::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))).collect();
        let p = SatakeParams::new(q, xs).map_err(|e| e.to_string())?;
        let t = trace_unramified(&p, &HeckeElement::unit(n, q)).map_err(|e| e.to_string())?;
        ensure(t == Complex64::new(1.0, 0.0), || format!("tr(1_K) = {t}"))?;
    }
    for q in [2u64, 3, 5, 7, 9] {
        for n in [2usize, 3] {
            let triv = SatakeParams::trivial(n, q).map_err(|e| e.to_string())?;
            let t = trace_unramified(&triv, &generator(n, q, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let cosets = count_lines(q, n) as f64;
            ensure(close(t, Complex64::new(cosets, 0.0), 1e-9 * cosets), || format!("q = {q}, n = {n}: {t} vs {cosets}"))?;
        }
    }
    let mut worst = 0f64;
    for _ in 0..1000 {
        let (n, q) = (r.gen_range(1..=3), *qs.choose(&mut r).unwrap());
        let p = rand_unitary(n, q, &mut r);
        let (f, g) = (rand_hecke(n, q, &mut r), rand_hecke(n, q, &mut r));
        let fg = trace_unramified(&p, &f.mul(&g).unwrap()).unwrap();
        let prod = trace_unramified(&p, &f).unwrap() * trace_unramified(&p, &g).unwrap();
        worst = worst.max((fg - prod).norm());
        ensure(close(fg, prod, 1e-9), || format!("tr(fg) = {fg}, tr f tr g = {prod}"))?;
    }
    Ok(format!("tr(1_K) x100, q+1 for q in 2,3,5,7,9, 1000 products (max error {worst:.1e})"))
}

// 9 ------------------------------------------------------------------------

fn rand_in_w(n: usize, q: u64, r: &mut ChaCha8Rng) -> SatakeParams {
    if n == 2 && r.gen_bool(0.25) {
        // Complementary series: {q^s, q^-s} with real s in (0, 1/2).
        let s = r.gen_range(0.05..0.45);
        let x = (q as f64).powf(s);
        return SatakeParams::new(q, vec![Complex64::new(x, 0.0), Complex64::new(1.0 / x, 0.0)]).unwrap();
    }
    rand_unitary(n, q, r)
}

fn independence() -> Outcome {
    let mut r = rng(9);
    let qs = [2u64, 3, 4, 5, 7, 9];
    let (mut zero, mut witnessed) = (0, 0);
    for case in 0..200 {
        let nplaces = r.gen_range(1..=3);
        let places: Vec<PlaceSpec> = (0..nplaces)
            .map(|i| PlaceSpec { label: format!("v{i}"), n: r.gen_range(1..=3), q: *qs.choose(&mut r).unwrap() })
            .collect();
        let j = r.gen_range(1..=5);
        let reps: Vec<Vec<SatakeParams>> =
            (0..j).map(|_| places.iter().map(|pl| rand_in_w(pl.n, pl.q, &mut r)).collect()).collect();
        let all_zero = r.gen_bool(0.2);
        let cs: Vec<Complex64> = (0..j)
            .map(|_| {
                if all_zero || r.gen_bool(0.2) {
                    Complex64::zero()
                } else {
                    Complex64::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0))
                }
            })
            .collect();
        let nonzero = cs.iter().any(|c| !c.is_zero());
        let fam = PlacedFamily::new(places, reps, cs.clone()).map_err(|e| e.to_string())?;
        match independence_witness(&fam) {
            Ok(WitnessResult::CertifiedZero) => {
                ensure(!nonzero, || format!("case {case}: CertifiedZero with nonzero coefficients"))?;
                zero += 1;
            }
            Ok(WitnessResult::Witness(w)) => {
                ensure(nonzero, || format!("case {case}: witness for the zero family"))?;
                let cu = cs.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let traces = fam.traces(&w.factors).map_err(|e| e.to_string())?;
                let sum: Complex64 = cs.iter().zip(&traces).map(|(c, t)| c * t).sum();
                ensure((w.delta - cu / 8.0).abs() < 1e-12, || format!("case {case}: δ = {}", w.delta))?;
                ensure(close(sum, w.sum, 1e-9 * (1.0 + sum.norm())), || format!("case {case}: reported sum {}", w.sum))?;
                ensure(sum.norm() > w.delta, || format!("case {case}: |Σ| = {} ≤ δ = {}", sum.norm(), w.delta))?;
                witnessed += 1;
            }
            Err(e) => return Err(format!("case {case}: {} ({e})", e.kind())),
        }
    }
    Ok(format!("200 families: {zero} certified zero, {witnessed} witnesses, 0 SearchFailed"))
}

// 10 -----------------------------------------------------------------------

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn transfer_end_to_end() -> Outcome {
    let tag = ConjClassTag::new(MonicPoly::from_ints(&[1, 0, 1]).unwrap()).map_err(|e| e.to_string())?;
    ensure(local_transferable(&tag, 2, Place::Finite(2)) == Ok(true), || "X²+1 at 2".into())?;
    ensure(local_transferable(&tag, 2, Place::Infinite) == Ok(true), || "X²+1 at inf".into())?;

    let mut r = rng(10);
    for _ in 0..10_000 {
        let n = r.gen_range(1..=6);
        let mut cs: Vec<Q> = (0..n).map(|_| rand_q(&mut r, 30)).collect();
        cs.push(Q::one());
        let p = MonicPoly::new(cs).map_err(|e| e.to_string())?;
        let m: QMatrix = companion_of(&p);
        ensure(m.char_poly() == p, || format!("charpoly(companion({p})) = {}", m.char_poly()))?;
        if p.is_squarefree() && !p.constant_term().is_zero() {
            let t = class_of_matrix(&m).map_err(|e| e.to_string())?;
            ensure(t.poly == p, || format!("class tag of companion({p})"))?;
        }
    }

    let mut shapes = 0;
    for total in 1..=8 {
        for sizes in compositions(total) {
            let shape = LeviShape::new(sizes.clone()).map_err(|e| e.to_string())?;
            for d in 1..=4 {
                let up = levi_correspondence(&shape, d, Direction::GPrimeToG).map_err(|e| e.to_string())?;
                let up = up.ok_or_else(|| format!("{sizes:?} has no image under x{d}"))?;
                let back = levi_correspondence(&up, d, Direction::GtoGPrime).map_err(|e| e.to_string())?;
                ensure(back.as_ref() == Some(&shape), || format!("{sizes:?}, d = {d}: up then down"))?;
                let down = levi_correspondence(&shape, d, Direction::GtoGPrime).map_err(|e| e.to_string())?;
                let divisible = sizes.iter().all(|s| s % d == 0);
                ensure(down.is_some() == divisible, || format!("{sizes:?}, d = {d}: divisibility"))?;
                if let Some(down) = down {
                    let again = levi_correspondence(&down, d, Direction::GPrimeToG).map_err(|e| e.to_string())?;
                    ensure(again.as_ref() == Some(&shape), || format!("{sizes:?}, d = {d}: down then up"))?;
                }
            }
            shapes += 1;
        }
    }
    Ok(format!("X²+1 at 2 and inf; 10000 companions; {shapes} shapes x d in 1..4"))
}

// 11 -----------------------------------------------------------------------

fn comparison() -> Outcome {
    let mut r = rng(11);
    let mut runs = 0;
    for m in models::all_standard() {
        let order = m.group().order();
        let mut perm: Vec<usize> = (0..order).collect();
        perm.shuffle(&mut r);
        let right = m.transport(&perm, format!("{}'", m.name())).map_err(|e| e.to_string())?;
        let matching = matching_from_map(&m, &right, &perm).map_err(|e| e.to_string())?;
        let f = TestFunction::random_gaussian(order, 5, &mut r);
        let f_right = transport_function(&f, &perm);
        let report = compare_models(&m, &right, &matching, &f, &f_right).map_err(|e| format!("{}: {e}", m.name()))?;
        ensure(report.spectral_equal && report.matched.len() == m.orbits().len(), || {
            format!("{}: {} matched, spectral equal {}", m.name(), report.matched.len(), report.spectral_equal)
        })?;

        // Drop an orbit whose term is nonzero and expect it to be named.
        let geo = m.geometric_trace(&f).map_err(|e| e.to_string())?;
        let Some(victim) = geo.terms.iter().position(|t| !t.term.is_zero()) else {
            continue;
        };
        let dropped = matching.iter().find(|(_, &l)| l == victim).map(|(&rr, _)| rr).unwrap();
        let mut partial = matching.clone();
        partial.remove(&dropped);
        match compare_models(&m, &right, &partial, &f, &f_right) {
            Err(Error::NonVanishingUnmatched { orbit, side, .. }) => {
                let want = if side == "left" { m.orbit_label(victim) } else { right.orbit_label(dropped) };
                ensure(orbit == want, || format!("{}: named {orbit}, expected {want}", m.name()))?;
            }
            other => return Err(format!("{}: expected NonVanishingUnmatched, got {other:?}", m.name())),
        }
        runs += 1;
    }
    Ok(format!("{runs} transported models equal; dropped orbit named each time"))
}

fn main() -> ExitCode {
    let corpus = factor_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("trace formula identity", Box::new(trace_identity)),
        ("spectral decomposition", Box::new(decomposition)),
        ("product formula", Box::new(product_formula)),
        ("factor degrees vs DDF", Box::new(|| factor_oracle(&corpus))),
        ("u-compatibility", Box::new(|| u_compat(&corpus))),
        ("reduced characteristic polynomial", Box::new(reduced_charpoly)),
        ("Hilbert symbol suite", Box::new(hilbert_suite)),
        ("Satake identities", Box::new(satake_identities)),
        ("independence witness", Box::new(independence)),
        ("transfer end to end", Box::new(transfer_end_to_end)),
        ("comparison harness", Box::new(comparison)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
