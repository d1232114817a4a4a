//! The `check` suites. Each suite is deterministic and reports every failing case.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_traits::{One, Zero};
use quantdisk::algebra::{check_associativity, multiply, Element, StructureModel};
use quantdisk::disk::{
    cone_rowsum_gamma_total, disk_multiply, eval_disk, eval_upstairs, ideal_dimension, occupancy, oracle_structure_constants,
    reduce_element, rowsum_total_bound, tilde_structure_constants, vanishing_ideal_witness, ConeModel, ConePoint, DiskIndex,
    DiskModel, DiskPoint, IndexTriple,
};
use quantdisk::exact::{rat, GaussRat, MultiIndex, Rational};
use quantdisk::seminorm::HEngine;
use quantdisk::symmetry::{
    check_automorphism, check_momentum_relations, coherent_vector, gns_embed, gns_inner, gns_project, gns_rep_closed_form,
    gns_rep_definitional, phi_rescale, positivity_check, CMatrix, GnsVector, GroupElement, LieElement, RescaleStatus,
};
use quantdisk::zoo::{Group, GroupModel, LaurentBasis, LaurentModel, MatrixBasis, MatrixModel, Pos, PolyBasis, PolyModel, WickFlatModel, WickIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Symmetry,
    Filtration,
    Ideal,
    Quotient,
    Positivity,
    LaurentDivergence,
    MatrixDivergence,
    Associativity,
    Rowsum,
    Radial,
    Automorphism,
    Momentum,
    Rescale,
    Gns,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("named").get_name().to_string()
    }
}

const SEED: u64 = 0x5eed_d15c;
const MAX_WITNESSES: usize = 20;

#[derive(Default)]
pub struct Report {
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

impl Report {
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn table(&self, suite: Suite) -> Table {
        let mut t = Table::new(&["suite", "status", "checked", "failed", "witness"]);
        let status = if self.failed == 0 { "pass" } else { "fail" };
        let first = self.witnesses.first().cloned().unwrap_or_default();
        t.push(vec![suite.name(), status.into(), self.checked.to_string(), self.failed.to_string(), first]);
        for w in self.witnesses.iter().skip(1) {
            t.push(vec![suite.name(), "fail".into(), String::new(), String::new(), w.clone()]);
        }
        t
    }
}

fn small_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let mut q = || rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    GaussRat::new(q(), q())
}

fn random_element<I: Ord + Clone>(rng: &mut ChaCha8Rng, pool: &[I], terms: usize) -> Element<I> {
    let mut a = Element::zero();
    while a.is_zero() {
        for _ in 0..terms {
            a.add_term(pool[rng.gen_range(0..pool.len())].clone(), small_gauss(rng));
        }
    }
    a
}

fn sorted(v: Vec<(IndexTriple, Rational)>) -> BTreeMap<IndexTriple, Rational> {
    v.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn oracle(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let ts = IndexTriple::up_to(cfg.n, level);
    for a in &ts {
        for b in &ts {
            let lhs = sorted(tilde_structure_constants(a, b));
            let rhs = sorted(oracle_structure_constants(a, b, &cfg.hbar)?);
            r.case(lhs == rhs, || format!("{a} * {b}"));
        }
    }
    Ok(r)
}

fn symmetry(cfg: &RunConfig, level: u32) -> Report {
    let mut r = Report::default();
    let ts = IndexTriple::up_to(cfg.n, level);
    for a in &ts {
        for b in &ts {
            let ab = sorted(tilde_structure_constants(a, b));
            let ba = sorted(tilde_structure_constants(&b.swapped(), &a.swapped()));
            let transposed: BTreeMap<IndexTriple, Rational> = ba.into_iter().map(|(t, c)| (t.swapped(), c)).collect();
            r.case(ab == transposed, || format!("transpose symmetry at {a} * {b}"));
            for out in ab.keys() {
                r.case(occupancy(a, b, out) <= 1, || format!("occupancy {} at {a} * {b} -> {out}", occupancy(a, b, out)));
            }
        }
    }
    r
}

fn filtration(cfg: &RunConfig, level: u32) -> Report {
    let mut r = Report::default();
    let ts = IndexTriple::up_to(cfg.n, level);
    for a in &ts {
        for b in &ts {
            for (out, _) in tilde_structure_constants(a, b) {
                let ok = out.alpha >= a.alpha.max(b.alpha) && out.alpha <= a.alpha + b.alpha;
                r.case(ok, || format!("{a} * {b} reaches {out}"));
            }
        }
    }
    r
}

fn ideal(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let cone = ConeModel::new(cfg.n, cfg.hbar.clone())?;
    for b in IndexTriple::up_to(cfg.n, level.saturating_sub(1)) {
        let w = vanishing_ideal_witness(&cone, &Element::basis(b.clone()))?;
        r.case(reduce_element(&w, &cfg.hbar)?.is_zero(), || format!("witness of {b} does not reduce to zero"));
    }
    for gamma in 1..=level {
        let want = IndexTriple::up_to(cfg.n, gamma - 1).len();
        let got = ideal_dimension(cfg.n, gamma, &cfg.hbar)?;
        r.case(got == want, || format!("ideal dimension at level {gamma}: {got}, expected {want}"));
    }
    Ok(r)
}

/// Rational points with y = 1 for n = 1.
fn unit_hyperboloid_points() -> Vec<Vec<GaussRat>> {
    let q = |a, b| GaussRat::real(rat(a, b));
    vec![
        vec![q(1, 1), q(0, 1)],
        vec![q(5, 4), q(3, 4)],
        vec![q(13, 12), q(5, 12)],
        vec![q(5, 3), GaussRat::new(rat(0, 1), rat(4, 3))],
        vec![q(17, 15), GaussRat::new(rat(-8, 15), rat(0, 1))],
    ]
}

fn quotient(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let model = DiskModel::new(1, cfg.hbar.clone())?;
    let cone = model.cone();
    let pool = IndexTriple::up_to(1, level);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points: Vec<ConePoint> = unit_hyperboloid_points().into_iter().map(ConePoint::new).collect::<quantdisk::Result<_>>()?;
    for _ in 0..10 {
        let a = random_element(&mut rng, &pool, 3);
        let b = random_element(&mut rng, &pool, 3);
        let j = vanishing_ideal_witness(cone, &random_element(&mut rng, &pool, 2))?;
        let ab = multiply(cone, &a, &b)?;
        let reduced = reduce_element(&ab, &cfg.hbar)?;
        let shifted = reduce_element(&multiply(cone, &a.add(&j), &b)?, &cfg.hbar)?;
        r.case(reduced == shifted, || format!("lift change moved the product of {a:?} and {b:?}"));
        let down = disk_multiply(&model, &reduce_element(&a, &cfg.hbar)?, &reduce_element(&b, &cfg.hbar)?)?;
        for w in &points {
            let ok = eval_disk(&down, &w.project(), &cfg.hbar)? == eval_upstairs(&ab, w, &cfg.hbar)?;
            r.case(ok, || format!("evaluation mismatch at {:?}", w.coords()));
        }
    }
    Ok(r)
}

fn positivity(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let model = DiskModel::new(cfg.n, cfg.hbar.clone())?;
    let pool = DiskIndex::up_to(cfg.n, level);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..50 {
        let a = random_element(&mut rng, &pool, 4);
        let p = positivity_check(&model, &a)?;
        let pa = gns_project(&a);
        r.case(GaussRat::real(p.clone()) == gns_inner(&pa, &pa, &cfg.hbar)?, || format!("delta0(a* a) = {p} differs from the GNS norm for {a:?}"));
    }
    Ok(r)
}

fn laurent_divergence() -> CliResult<Report> {
    let mut r = Report::default();
    let plain = LaurentModel::new(LaurentBasis::Plain);
    let samples = [
        Element::from_real_terms([(0, rat(1, 1))]),
        Element::from_real_terms([(-1, rat(1, 1)), (2, rat(1, 3))]),
        Element::from_real_terms([(3, rat(-2, 1))]),
    ];
    for a in &samples {
        let e = HEngine::new(&plain, a)?;
        for k in -3..=3 {
            r.case(e.cell(2, 0, &k).is_divergent(), || format!("laurent:plain h_2 finite at {k} for {a:?}"));
        }
    }
    let fact = LaurentModel::new(LaurentBasis::Factorial);
    let e = HEngine::new(&fact, &samples[1])?;
    r.case(e.cell(2, 0, &0).is_finite(), || "laurent:factorial h_2 not finite".into());
    Ok(r)
}

fn matrix_divergence() -> CliResult<Report> {
    let mut r = Report::default();
    let m = MatrixModel::new(MatrixBasis::Plain);
    let a = Element::from_real_terms([(Pos(1, 2), rat(1, 1)), (Pos(3, 1), rat(2, 1))]);
    let e = HEngine::new(&m, &a)?;
    for row in [1, 3] {
        r.case(e.cell(2, 0, &Pos(row, 5)).is_divergent(), || format!("h_(2,0) finite on row {row}"));
    }
    for col in [1, 2] {
        r.case(e.cell(2, 3, &Pos(4, col)).is_divergent(), || format!("h_(2,3) finite on column {col}"));
    }
    r.case(e.cell(2, 0, &Pos(2, 5)).is_finite(), || "h_(2,0) infinite on an empty row".into());
    Ok(r)
}

fn basis_up_to<M: StructureModel>(model: &M, rank: u64) -> Vec<Element<M::Index>> {
    (0..=rank).flat_map(|k| model.indices_with_rank(k).unwrap_or_default()).map(Element::basis).collect()
}

fn assoc_case<M: StructureModel>(r: &mut Report, model: &M, sample: &[Element<M::Index>]) {
    let rep = check_associativity(model, sample);
    r.checked += rep.checked;
    r.failed += rep.failures.len();
    for (i, j, k) in rep.failures.iter().take(MAX_WITNESSES) {
        r.witnesses.push(format!("{}: triple ({i}, {j}, {k})", model.name()));
    }
}

fn associativity(cfg: &RunConfig) -> CliResult<Report> {
    let mut r = Report::default();
    for b in [PolyBasis::Monomial, PolyBasis::Factorial] {
        let m = PolyModel::new(b);
        assoc_case(&mut r, &m, &basis_up_to(&m, 4));
    }
    let m = LaurentModel::new(LaurentBasis::Factorial);
    assoc_case(&mut r, &m, &basis_up_to(&m, 2));
    for b in [MatrixBasis::Hat, MatrixBasis::Tilde] {
        let m = MatrixModel::new(b);
        assoc_case(&mut r, &m, &basis_up_to(&m, 4));
    }
    let m = GroupModel::new(Group::Z, Rational::one())?;
    assoc_case(&mut r, &m, &basis_up_to(&m, 2));
    let wick = WickFlatModel::new(1, cfg.hbar.clone())?;
    let mut ws = Vec::new();
    for i in 0..=3u32 {
        for j in 0..=(3 - i) {
            ws.push(Element::basis(WickIndex::new(MultiIndex::new(vec![i]), MultiIndex::new(vec![j]))));
        }
    }
    assoc_case(&mut r, &wick, &ws);
    let cone = ConeModel::new(1, cfg.hbar.clone())?;
    assoc_case(&mut r, &cone, &basis_up_to(&cone, 2));
    let disk = DiskModel::new(1, cfg.hbar.clone())?;
    let ds: Vec<Element<DiskIndex>> = DiskIndex::up_to(1, 2).into_iter().map(Element::basis).collect();
    assoc_case(&mut r, &disk, &ds);
    Ok(r)
}

fn rowsum(cfg: &RunConfig, level: u32) -> Report {
    let mut r = Report::default();
    for gamma in 0..=level {
        let bound = rowsum_total_bound(cfg.n, gamma);
        for t in IndexTriple::up_to(cfg.n, gamma) {
            let s = cone_rowsum_gamma_total(&t, gamma);
            r.case(s <= bound, || format!("row sum {s} of {t} at level {gamma} exceeds {bound}"));
        }
    }
    r
}

fn cone_points() -> CliResult<Vec<ConePoint>> {
    let q = |a, b| GaussRat::real(rat(a, b));
    let pts = vec![
        vec![q(1, 1), q(0, 1)],
        vec![q(2, 1), q(1, 1)],
        vec![q(5, 4), GaussRat::new(rat(1, 2), rat(1, 3))],
        vec![GaussRat::new(rat(0, 1), rat(3, 2)), q(-1, 2)],
        vec![q(7, 3), GaussRat::new(rat(-1, 1), rat(1, 1))],
    ];
    Ok(pts.into_iter().map(ConePoint::new).collect::<quantdisk::Result<_>>()?)
}

fn radial(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let cone = ConeModel::new(1, cfg.hbar.clone())?;
    let ym1 = cone.y_minus_one();
    let pool = IndexTriple::up_to(1, level);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points = cone_points()?;
    for _ in 0..10 {
        let b = random_element(&mut rng, &pool, 3);
        let prod = multiply(&cone, &ym1, &b)?;
        for w in &points {
            let lhs = eval_upstairs(&prod, w, &cfg.hbar)?;
            let rhs = eval_upstairs(&b, w, &cfg.hbar)?.scale(&(w.y() - Rational::one()));
            r.case(lhs == rhs, || format!("radial law at {:?}", w.coords()));
        }
    }
    Ok(r)
}

fn su11_elements() -> Vec<(&'static str, GroupElement)> {
    let g = |a: i64, b: i64, d: i64| GaussRat::new(rat(a, d), rat(b, d));
    let build = |rows: Vec<Vec<GaussRat>>| GroupElement::new(CMatrix::from_rows(rows).expect("square")).expect("group element");
    vec![
        ("identity", GroupElement::identity(1)),
        ("phase", build(vec![vec![g(3, 4, 5), g(0, 0, 1)], vec![g(0, 0, 1), g(3, -4, 5)]])),
        ("boost", build(vec![vec![g(5, 0, 4), g(3, 0, 4)], vec![g(3, 0, 4), g(5, 0, 4)]])),
    ]
}

fn automorphism(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let cone = ConeModel::new(1, cfg.hbar.clone())?;
    let ts = IndexTriple::up_to(1, level);
    for (name, u) in su11_elements() {
        for a in &ts {
            for b in &ts {
                let c = check_automorphism(&cone, &u, &Element::basis(a.clone()), &Element::basis(b.clone()))?;
                r.case(c.holds, || format!("{name}: {a} * {b}"));
            }
        }
    }
    Ok(r)
}

fn su11_generators() -> Vec<LieElement> {
    let z = GaussRat::zero;
    let i = GaussRat::i;
    let o = GaussRat::one;
    [
        vec![vec![i(), z()], vec![z(), -i()]],
        vec![vec![z(), o()], vec![o(), z()]],
        vec![vec![z(), i()], vec![-i(), z()]],
    ]
    .into_iter()
    .map(|rows| LieElement::new(CMatrix::from_rows(rows).expect("square")).expect("Lie element"))
    .collect()
}

fn momentum(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let cone = ConeModel::new(1, cfg.hbar.clone())?;
    let gens = su11_generators();
    for (k, xi) in gens.iter().enumerate() {
        for (l, zeta) in gens.iter().enumerate().skip(k + 1) {
            let rep = check_momentum_relations(&cone, xi, zeta, level)?;
            r.case(rep.bracket_holds, || format!("bracket relation for generators {k}, {l}"));
            r.case(rep.derivation_holds, || format!("derivation identity for generators {k}, {l}"));
        }
    }
    Ok(r)
}

fn rescale(level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let pool = IndexTriple::up_to(1, level);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points = cone_points()?;
    for _ in 0..10 {
        let a = random_element(&mut rng, &pool, 3);
        let st = phi_rescale(&a, &rat(1, 2), &rat(1, 8), &points[..3])?;
        r.case(matches!(st, RescaleStatus::Verified { .. }), || format!("{st:?}"));
    }
    Ok(r)
}

fn gns(cfg: &RunConfig, level: u32) -> CliResult<Report> {
    let mut r = Report::default();
    let model = DiskModel::new(1, cfg.hbar.clone())?;
    let pool = DiskIndex::up_to(1, level);
    let qs = MultiIndex::with_abs_le(1, level);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..30 {
        let a = random_element(&mut rng, &pool, 3);
        let psi = GnsVector::from_terms(qs.iter().map(|q| (q.clone(), small_gauss(&mut rng))));
        let ok = gns_rep_closed_form(&model, &a, &psi)? == gns_rep_definitional(&model, &a, &psi)?;
        r.case(ok, || format!("representation paths differ for {a:?}"));
    }
    let g = |a, b, d| GaussRat::new(rat(a, d), rat(b, d));
    for w in [vec![g(0, 0, 1)], vec![g(1, 0, 2)], vec![g(1, 1, 3)]] {
        let w = DiskPoint::new(w)?;
        for _ in 0..5 {
            let psi = GnsVector::from_terms(qs.iter().map(|q| (q.clone(), small_gauss(&mut rng))));
            let lhs = gns_inner(&coherent_vector(&w, level), &psi, &cfg.hbar)?;
            let rhs = eval_disk(&gns_embed(&psi, 1)?, &w, &cfg.hbar)?;
            r.case(lhs == rhs, || format!("reproducing identity at {:?}", w.coords()));
        }
    }
    Ok(r)
}

pub fn run(cfg: &RunConfig, suite: Suite, level: Option<u32>) -> CliResult<Report> {
    let lv = |default: u32| level.unwrap_or(default);
    match suite {
        Suite::Oracle => oracle(cfg, lv(cfg.gamma_max)),
        Suite::Symmetry => Ok(symmetry(cfg, lv(cfg.gamma_max))),
        Suite::Filtration => Ok(filtration(cfg, lv(cfg.gamma_max))),
        Suite::Ideal => ideal(cfg, lv(cfg.gamma_max)),
        Suite::Quotient => quotient(cfg, lv(3)),
        Suite::Positivity => positivity(cfg, lv(3)),
        Suite::LaurentDivergence => laurent_divergence(),
        Suite::MatrixDivergence => matrix_divergence(),
        Suite::Associativity => associativity(cfg),
        Suite::Rowsum => Ok(rowsum(cfg, lv(6))),
        Suite::Radial => radial(cfg, lv(3)),
        Suite::Automorphism => automorphism(cfg, lv(2)),
        Suite::Momentum => momentum(cfg, lv(2)),
        Suite::Rescale => rescale(lv(3)),
        Suite::Gns => gns(cfg, lv(3)),
    }
}

/// Runs the suite, prints its report and fails on any failing case.
pub fn run_and_render(cfg: &RunConfig, suite: Suite, level: Option<u32>) -> CliResult<(String, Option<CliError>)> {
    let rep = run(cfg, suite, level)?;
    let text = rep.table(suite).render(cfg.output);
    let err = (rep.failed > 0).then(|| CliError::CheckFailed { suite: suite.name(), failed: rep.failed, checked: rep.checked });
    Ok((text, err))
}
