//! Executable versions of the structural statements about amalgamations.
//!
//! Every check returns a [`CheckResult`] carrying its verdict and the data that
//! justifies it, so a failing check always comes with a witness.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amalgam::{subring_image_plus, Amalgamation};
use crate::error::{Error, Result};
use crate::group::SubgroupPresentation;
use crate::ring::{verify_ring, FiniteRing, RingHom};
use crate::resolution::{self, Engine, PdVerdict, Resolution};
use crate::spectrum::{self, LocalRing};
use crate::submodule::{syzygy, Ideal, ModuleQuotient, Submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Bool(bool),
    Int(u64),
    Ints(Vec<u64>),
    Vectors(Vec<Vec<u64>>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub reason: Option<String>,
    pub witnesses: Vec<(String, Witness)>,
}

impl CheckResult {
    pub fn new(name: &str, anchor: &str) -> Self {
        Self { name: name.into(), anchor: anchor.into(), status: Status::Pass, reason: None, witnesses: Vec::new() }
    }

    pub fn with(mut self, label: &str, w: Witness) -> Self {
        self.witnesses.push((label.into(), w));
        self
    }

    pub fn push(&mut self, label: &str, w: Witness) {
        self.witnesses.push((label.into(), w));
    }

    /// Mark as failed unless `ok`.
    pub fn require(&mut self, ok: bool, what: &str) {
        if !ok && self.status != Status::Skipped {
            self.status = Status::Fail;
            let msg = match self.reason.take() {
                Some(r) => format!("{r}; {what}"),
                None => what.to_string(),
            };
            self.reason = Some(msg);
        }
    }

    pub fn skip(mut self, reason: &str) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.into());
        self
    }

    pub fn note(&mut self, text: &str) {
        self.reason = Some(match self.reason.take() {
            Some(r) => format!("{r}; {text}"),
            None => text.to_string(),
        });
    }

    /// A failed record for an error raised while running the check.
    pub fn from_error(name: &str, anchor: &str, err: &Error) -> Self {
        let mut c = Self::new(name, anchor).with("error", Witness::Text(err.to_string()));
        c.status = Status::Fail;
        c.reason = Some(err.to_string());
        c
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn betti_witness(res: &Resolution) -> Witness {
    Witness::Ints(res.betti.clone())
}

fn verdict_text(v: PdVerdict) -> Witness {
    Witness::Text(v.to_string())
}

// ---------------------------------------------------------------- hypotheses

pub const ANCHOR_HYPOTHESES: &str = "J f.g. ideal of f(A)+J, J² = 0, f(M)J = 0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub a_local: bool,
    pub j_proper: bool,
    pub j_square_zero: bool,
    pub fm_j_zero: bool,
    /// Minimal number of generators of `J` as an ideal of `f(A) + J`, when
    /// that ring is local.
    pub j_generators: Option<usize>,
    /// A nonzero product `j·j'`, if any.
    pub j_square_witness: Option<Vec<u64>>,
    /// A nonzero product `f(m)·j`, if any.
    pub fm_j_witness: Option<Vec<u64>>,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.a_local && self.j_proper && self.j_square_zero && self.fm_j_zero
    }
}

pub fn hypotheses(f: &RingHom, j: &Ideal) -> Result<HypothesisReport> {
    let a = f.source();
    let b = f.target();
    j.check_ring(b)?;
    let jg = j.generators(b);
    let local_a = LocalRing::new(a);
    let a_local = local_a.is_ok();
    let j_proper = j.order() != b.order();

    let mut j_square_witness = None;
    'outer: for x in &jg {
        for y in &jg {
            let p = b.mul(x, y);
            if !b.is_zero(&p) {
                j_square_witness = Some(p);
                break 'outer;
            }
        }
    }
    let mut fm_j_witness = None;
    let fm_j_zero = match &local_a {
        Ok(l) => {
            'o: for m in l.maximal().generators(a) {
                let fm = f.apply(&m);
                for y in &jg {
                    let p = b.mul(&fm, y);
                    if !b.is_zero(&p) {
                        fm_j_witness = Some(p);
                        break 'o;
                    }
                }
            }
            fm_j_witness.is_none()
        }
        Err(_) => false,
    };

    let j_generators = (|| -> Result<Option<usize>> {
        let (c, incl) = subring_image_plus(f, j)?;
        let Ok(lc) = LocalRing::new(&c) else { return Ok(None) };
        let pres = SubgroupPresentation::new(b.group(), incl.images())?;
        let mut gens = Vec::new();
        for g in &jg {
            gens.push(pres.coordinates(g)?.ok_or_else(|| Error::NotMember("J ⊄ f(A)+J".into()))?);
        }
        let jc = ModuleQuotient::of_submodule(&c, Submodule::ideal(&c, &gens)?);
        Ok(Some(resolution::minimal_generator_count(&lc, &jc)?))
    })()?;

    Ok(HypothesisReport {
        a_local,
        j_proper,
        j_square_zero: j_square_witness.is_none(),
        fm_j_zero,
        j_generators,
        j_square_witness,
        fm_j_witness,
    })
}

pub fn check_hypotheses(f: &RingHom, j: &Ideal) -> CheckResult {
    let mut c = CheckResult::new("hypotheses", ANCHOR_HYPOTHESES);
    let rep = match hypotheses(f, j) {
        Ok(r) => r,
        Err(e) => return CheckResult::from_error("hypotheses", ANCHOR_HYPOTHESES, &e),
    };
    c.push("a_local", Witness::Bool(rep.a_local));
    c.push("j_proper", Witness::Bool(rep.j_proper));
    c.push("j_square_zero", Witness::Bool(rep.j_square_zero));
    c.push("fm_j_zero", Witness::Bool(rep.fm_j_zero));
    if let Some(n) = rep.j_generators {
        c.push("j_min_generators", Witness::Int(n as u64));
    }
    if let Some(w) = &rep.j_square_witness {
        c.push("nonzero_j_product", Witness::Ints(w.clone()));
    }
    if let Some(w) = &rep.fm_j_witness {
        c.push("nonzero_fm_j_product", Witness::Ints(w.clone()));
    }
    c.require(rep.a_local, "A is not local");
    c.require(rep.j_proper, "J is not proper");
    c.require(rep.j_square_zero, "J² != 0");
    c.require(rep.fm_j_zero, "f(M)J != 0");
    c
}

fn require_hypotheses(c: CheckResult, objs: &Amalgamation) -> core::result::Result<(CheckResult, HypothesisReport), CheckResult> {
    match hypotheses(&objs.f, &objs.j) {
        Ok(h) if h.all_hold() => Ok((c, h)),
        Ok(_) => Err(c.skip("hypotheses do not hold (A local, J proper, J² = 0, f(M)J = 0)")),
        Err(e) => Err(CheckResult::from_error(&c.name, &c.anchor, &e)),
    }
}

macro_rules! try_check {
    ($c:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return CheckResult::from_error(&$c.name, &$c.anchor, &err),
        }
    };
}

// ---------------------------------------------------------------- locality

pub const ANCHOR_LOCAL: &str = "A⋈^f J local with maximal ideal M⋈^f J";

pub fn verify_remark_2_1(objs: &Amalgamation, budget: u128) -> CheckResult {
    let c = CheckResult::new("remark21", ANCHOR_LOCAL);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let la = try_check!(c, LocalRing::new(&objs.a));
    let predicted = try_check!(c, objs.bowtie(la.maximal()));
    let max = try_check!(c, spectrum::maximal_ideals(&objs.ring, budget));
    c.push("maximal_ideal_count", Witness::Int(max.len() as u64));
    c.push("predicted_order", Witness::Text(predicted.order().to_string()));
    c.require(max.len() == 1, "ring has more than one maximal ideal");
    if let Some(m) = max.first() {
        c.push("maximal_ideal_generators", Witness::Vectors(m.generators(&objs.ring)));
        c.require(*m == predicted, "maximal ideal differs from M⋈^f J");
    }
    let nil_b = spectrum::nilradical(&objs.b);
    let inside = objs.j.is_subset(&nil_b);
    c.push("j_in_rad_b", Witness::Bool(inside));
    c.require(inside, "J ⊄ Rad(B)");
    c
}

// ---------------------------------------------------------------- powers

pub const ANCHOR_POWER: &str = "(A⋈^f J)^n ≅ A^n ⋈^{f^n} J^n";

/// Verify the coordinate-shuffle isomorphism exhaustively when `|R^n|^2` fits
/// the budget, otherwise on `samples` seeded random pairs.
pub fn verify_power_iso(objs: &Amalgamation, n: usize, budget: u128, samples: usize, seed: u64) -> CheckResult {
    let mut c = CheckResult::new("power_iso", ANCHOR_POWER);
    if n == 0 {
        return c.skip("n must be at least 1");
    }
    let (target, iso) = try_check!(c, objs.power_iso(n));
    let src = iso.source().clone();
    let tgt = &target.ring;
    c.push("n", Witness::Int(n as u64));
    c.push("order", Witness::Text(src.order().to_string()));
    let same_order = src.order() == tgt.order();
    c.require(same_order, "orders differ");
    c.require(iso.is_injective(), "map is not injective");
    c.require(iso.apply(&src.one()) == tgt.one(), "unit not preserved");

    let ord = src.order().to_u128();
    let exhaustive = ord.map_or(false, |o| o.saturating_mul(o) <= budget.max(4096));
    let mut checked = 0u64;
    let mut bad: Option<Vec<Vec<u64>>> = None;
    let test_pair = |x: &[u64], y: &[u64], bad: &mut Option<Vec<Vec<u64>>>| {
        let lhs = iso.apply(&src.mul(x, y));
        let rhs = tgt.mul(&iso.apply(x), &iso.apply(y));
        let add_l = iso.apply(&src.add(x, y));
        let add_r = tgt.add(&iso.apply(x), &iso.apply(y));
        if (lhs != rhs || add_l != add_r) && bad.is_none() {
            *bad = Some(vec![x.to_vec(), y.to_vec()]);
        }
    };
    if exhaustive {
        let els: Vec<Vec<u64>> = src.elements().collect();
        let images: BTreeSet<Vec<u64>> = els.iter().map(|x| iso.apply(x)).collect();
        c.require(images.len() == els.len(), "map is not bijective on elements");
        for x in &els {
            for y in &els {
                test_pair(x, y, &mut bad);
                checked += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_element = |rng: &mut ChaCha8Rng| -> Vec<u64> {
            let v: Vec<u64> = (0..src.dim()).map(|_| rng.gen_range(0..src.modulus())).collect();
            src.group().reduced(&v)
        };
        for _ in 0..samples {
            let x = random_element(&mut rng);
            let y = random_element(&mut rng);
            test_pair(&x, &y, &mut bad);
            checked += 1;
        }
        c.note("sampled verification");
    }
    c.push("exhaustive", Witness::Bool(exhaustive));
    c.push("pairs_checked", Witness::Int(checked));
    if let Some(b) = bad {
        c.push("counterexample_pair", Witness::Vectors(b));
        c.require(false, "not a ring homomorphism on some pair");
    }
    c
}

// ---------------------------------------------------------------- kernel transfer

pub const ANCHOR_TRANSFER: &str = "Keru = Kerv ⋈^{f^r} J^r";
pub const ANCHOR_LEMMA24: &str = "first syzygy of W = Kerv ⋈^{f^r} J^r";

/// Everything computed for one kernel-transfer instance.
#[derive(Clone, Debug)]
pub struct Transfer {
    /// Indices of the input pairs kept by the minimality pruning.
    pub kept: Vec<usize>,
    pub p: usize,
    pub u: Vec<Vec<u64>>,
    pub w: Vec<Vec<u64>>,
    pub kerv: Submodule,
    pub keru: Submodule,
    /// `Kerv ∩ M^r`.
    pub kerv_max: Submodule,
    pub kerv_within_max: bool,
    /// `Keru = Kerv ⋈ J^r`.
    pub literal: bool,
    /// `Keru = (Kerv ∩ M^r) ⋈ J^r`.
    pub refined: bool,
}

impl Transfer {
    /// The identity that must hold: the literal one when `Kerv ⊆ M^r`, the
    /// refined one in general.
    pub fn holds(&self) -> bool {
        if self.kerv_within_max {
            self.literal && self.refined
        } else {
            self.refined
        }
    }
}

/// Compute both sides of the kernel-transfer identity for `W = span{(u_i, f(u_i) + k_i)}`.
pub fn kernel_transfer(objs: &Amalgamation, p: usize, u: &[Vec<u64>], k: &[Vec<u64>]) -> Result<Transfer> {
    if u.len() != k.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: k.len() });
    }
    let a = &objs.a;
    let r = &objs.ring;
    let la = LocalRing::new(a)?;
    let lr = LocalRing::new(r)?;
    let mp = Submodule::full(a, p).ideal_times(a, la.maximal())?;
    let jp = Submodule::full(&objs.b, p).ideal_times(&objs.b, &objs.j)?;
    let mut w = Vec::with_capacity(u.len());
    for (ui, ki) in u.iter().zip(k) {
        if ui.len() != p * a.dim() || !mp.contains(ui) {
            return Err(Error::NotMember("u_i must lie in M^p".into()));
        }
        if ki.len() != p * objs.b.dim() || !jp.contains(ki) {
            return Err(Error::NotMember("k_i must lie in J^p".into()));
        }
        w.push(objs.lift_vector(ui, ki)?);
    }
    let wmod = ModuleQuotient::of_submodule(r, Submodule::span(r, p, &w)?);
    let pruned = resolution::minimal_generators_from(&lr, &wmod, &w)?;
    let mut kept = Vec::with_capacity(pruned.len());
    let mut cursor = 0;
    for g in &pruned {
        while w[cursor] != *g {
            cursor += 1;
        }
        kept.push(cursor);
        cursor += 1;
    }
    let u_kept: Vec<Vec<u64>> = kept.iter().map(|&i| a.group().reduced(&u[i]).to_vec()).collect();
    let u_kept: Vec<Vec<u64>> = u_kept.iter().map(|v| crate::submodule::reduce_vector(a, v)).collect();
    let rr = kept.len();
    let kerv = syzygy(a, p, &u_kept)?;
    let keru = syzygy(r, p, &pruned)?;
    let m_r = Submodule::full(a, rr).ideal_times(a, la.maximal())?;
    let kerv_max = kerv.intersection(&m_r)?;
    let literal = keru == objs.bowtie_module(&kerv)?;
    let refined = keru == objs.bowtie_module(&kerv_max)?;
    Ok(Transfer { kept, p, u: u_kept, w: pruned, kerv_within_max: kerv.is_subset(&m_r), kerv, keru, kerv_max, literal, refined })
}

fn transfer_witnesses(c: &mut CheckResult, t: &Transfer) {
    c.push("kept_generators", Witness::Ints(t.kept.iter().map(|&i| i as u64).collect()));
    c.push("r", Witness::Int(t.kept.len() as u64));
    c.push("kerv_order", Witness::Text(t.kerv.order().to_string()));
    c.push("keru_order", Witness::Text(t.keru.order().to_string()));
    c.push("kerv_within_max", Witness::Bool(t.kerv_within_max));
    c.push("literal_identity", Witness::Bool(t.literal));
    c.push("refined_identity", Witness::Bool(t.refined));
}

fn judge_transfer(c: &mut CheckResult, t: &Transfer) {
    if !t.kerv_within_max {
        c.note("Kerv ⊄ M^r, so Keru is compared with (Kerv ∩ M^r) ⋈ J^r");
    }
    c.require(t.holds(), "Keru differs from the predicted ⋈-product");
}

pub fn verify_kernel_transfer(objs: &Amalgamation, p: usize, u: &[Vec<u64>], k: &[Vec<u64>]) -> CheckResult {
    let c = CheckResult::new("kernel_transfer", ANCHOR_TRANSFER);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let t = try_check!(c, kernel_transfer(objs, p, u, k));
    if t.kept.len() < u.len() {
        c.note(&format!("pruned {} of {} generators to a minimal set", u.len() - t.kept.len(), u.len()));
    }
    transfer_witnesses(&mut c, &t);
    judge_transfer(&mut c, &t);
    c
}

pub fn verify_lemma_2_4(objs: &Amalgamation, p: usize, u: &[Vec<u64>], k: &[Vec<u64>], depth: usize) -> CheckResult {
    let c = CheckResult::new("lemma24", ANCHOR_LEMMA24);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let t = try_check!(c, kernel_transfer(objs, p, u, k));
    transfer_witnesses(&mut c, &t);
    judge_transfer(&mut c, &t);
    let lr = try_check!(c, LocalRing::new(&objs.ring));
    let la = try_check!(c, LocalRing::new(&objs.a));
    let wmod = ModuleQuotient::of_submodule(&objs.ring, try_check!(c, Submodule::span(&objs.ring, p, &t.w)));
    let umod = ModuleQuotient::of_submodule(&objs.a, try_check!(c, Submodule::span(&objs.a, p, &t.u)));
    let rw = try_check!(c, resolution::minimal_resolution(&lr, &wmod, depth));
    let ru = try_check!(c, resolution::minimal_resolution(&la, &umod, depth));
    c.push("betti_w", betti_witness(&rw));
    c.push("betti_u", betti_witness(&ru));
    c.push("pd_w", verdict_text(rw.verdict));
    c.push("pd_u", verdict_text(ru.verdict));
    c.require(rw.validation.passed() && ru.validation.passed(), "resolution validation failed");
    c
}

// ---------------------------------------------------------------- idempotents

pub const ANCHOR_IDEMPOTENT: &str = "M⋈^f J is not generated by an idempotent";

pub fn verify_idempotent_claim(objs: &Amalgamation, budget: u128) -> CheckResult {
    let c = CheckResult::new("idempotent", ANCHOR_IDEMPOTENT);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    if objs.j.is_zero() {
        return c.skip("J = 0");
    }
    let r = &objs.ring;
    try_check!(c, r.check_budget(budget));
    let la = try_check!(c, LocalRing::new(&objs.a));
    let target = try_check!(c, objs.bowtie(la.maximal()));
    let idem: Vec<Vec<u64>> = r.elements().filter(|e| r.mul(e, e) == *e).collect();
    let via_spectrum = try_check!(c, spectrum::idempotents(r, budget));
    c.push("idempotents", Witness::Vectors(idem.clone()));
    c.require(idem == via_spectrum, "enumerated idempotents disagree with the spectrum computation");
    for e in &idem {
        let gen = try_check!(c, Submodule::ideal(r, &[e.clone()]));
        if gen == target {
            c.push("generating_idempotent", Witness::Ints(e.clone()));
            c.require(false, "an idempotent generates M⋈^f J");
        }
    }
    c
}

// ---------------------------------------------------------------- Betti positivity

pub const ANCHOR_BETTI: &str = "pd(M⋈^f J) and pd({0}×J) infinite";

pub fn betti_experiment(objs: &Amalgamation, depth: usize) -> CheckResult {
    let c = CheckResult::new("betti", ANCHOR_BETTI);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    if objs.j.is_zero() {
        return c.skip("J = 0, so {0}×J is the zero module");
    }
    let r = &objs.ring;
    let lr = try_check!(c, LocalRing::new(r));
    let la = try_check!(c, LocalRing::new(&objs.a));
    let max = try_check!(c, objs.bowtie(la.maximal()));
    let mut engine = Engine::new(&lr);
    for (label, ideal) in [("max", max), ("zero_times_j", objs.zero_times_j())] {
        let res = try_check!(c, engine.resolve(&ModuleQuotient::of_submodule(r, ideal), depth));
        c.push(&format!("betti_{label}"), betti_witness(&res));
        c.push(&format!("pd_{label}"), verdict_text(res.verdict));
        if let Some((s, per)) = res.betti_period {
            c.push(&format!("period_{label}"), Witness::Ints(vec![s as u64, per as u64]));
        }
        c.push(&format!("syzygy_cycle_{label}"), Witness::Bool(res.syzygy_cycle));
        c.require(res.betti_positive(), &format!("some β_i of {label} vanishes"));
        c.require(res.validation.passed(), "resolution validation failed");
    }
    c.note("Betti positivity to the computed depth is consistent with infinite projective dimension");
    c
}

// ---------------------------------------------------------------- (0,k)

pub const ANCHOR_ZERO_K: &str = "Keru = M⋈^f J, (0,k)I = 0, I not projective";

pub fn verify_thm_3_1_objects(objs: &Amalgamation, k: &[u64], depth: usize) -> CheckResult {
    let c = CheckResult::new("thm31", ANCHOR_ZERO_K);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let r = &objs.ring;
    if objs.b.is_zero(k) {
        return c.skip("k = 0");
    }
    let x = try_check!(c, objs.element(&objs.a.zero(), k));
    let lr = try_check!(c, LocalRing::new(r));
    let la = try_check!(c, LocalRing::new(&objs.a));
    let predicted = try_check!(c, objs.bowtie(la.maximal()));
    let syz = try_check!(c, syzygy(r, 1, &[x.clone()]));
    c.push("element", Witness::Ints(x.clone()));
    c.push("syzygy_generators", Witness::Vectors(syz.generators(r)));
    c.require(syz == predicted, "syzygy of (0,k) differs from M⋈^f J");

    let ideal = try_check!(c, Submodule::ideal(r, &[x.clone()]));
    let kills = ideal.generators(r).iter().all(|g| r.is_zero(&r.mul(&x, g)));
    c.push("kills_ideal", Witness::Bool(kills));
    c.require(kills, "(0,k)·I != 0");

    let module = ModuleQuotient::of_submodule(r, ideal.clone());
    let proj = try_check!(c, resolution::is_projective(&lr, &module));
    c.push("ideal_projective", Witness::Bool(proj));
    c.require(!proj, "I is projective");

    let quotient = ModuleQuotient::cokernel(r, ideal);
    let res = try_check!(c, resolution::minimal_resolution(&lr, &quotient, depth));
    c.push("betti_quotient", betti_witness(&res));
    c.push("pd_quotient", verdict_text(res.verdict));
    c.require(res.verdict == PdVerdict::AtLeast(depth), "R/I has finite projective dimension");
    c.require(res.validation.passed(), "resolution validation failed");
    c
}

// ---------------------------------------------------------------- kernel cascade

pub const ANCHOR_CASCADE: &str = "K₀ ≅ W⋈^{f^s}J^s ⊕ M^t⋈^{f^t}J^t";

/// One cascade step: for `X ⊆ M^q` with minimal generators `x`, the syzygy of
/// `{(x_i, f(x_i))} ∪ {(0, g_l)}` is `syz_A(x) ⋈ J^s ⊕ M^t ⋈ J^t` when the `g_l`
/// minimally generate `({0}×J)^q`. Returns the next `X` and whether the
/// prediction held.
fn cascade_step(objs: &Amalgamation, la: &LocalRing, lr: &LocalRing, x: &Submodule) -> Result<(Submodule, bool, usize, usize)> {
    let a = &objs.a;
    let r = &objs.ring;
    let q = x.rank();
    let xs = resolution::minimal_generators(la, &ModuleQuotient::of_submodule(a, x.clone()))?;
    let jq = ModuleQuotient::of_submodule(r, objs.zero_times_j_power(q));
    let gs = resolution::minimal_generators(lr, &jq)?;
    let zero_b = vec![0u64; q * objs.b.dim()];
    let mut gens = Vec::with_capacity(xs.len() + gs.len());
    for xi in &xs {
        gens.push(objs.lift_vector(xi, &zero_b)?);
    }
    gens.extend(gs.iter().cloned());
    let kernel = syzygy(r, q, &gens)?;
    let w2 = syzygy(a, q, &xs)?;
    let mt = Submodule::full(a, gs.len()).ideal_times(a, la.maximal())?;
    let next = w2.direct_sum(a, &mt)?;
    let predicted = objs.bowtie_module(&next)?;
    Ok((next, kernel == predicted, xs.len(), gs.len()))
}

pub fn verify_thm_3_4_bookkeeping(objs: &Amalgamation, m: &[u64], cascade: Option<(usize, &[Vec<u64>], &[Vec<u64>])>) -> CheckResult {
    let c = CheckResult::new("thm34", ANCHOR_CASCADE);
    let (mut c, _) = match require_hypotheses(c, objs) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let r = &objs.ring;
    let la = try_check!(c, LocalRing::new(&objs.a));
    let lr = try_check!(c, LocalRing::new(r));
    let m = try_check!(c, objs.a.element(m));
    if !la.maximal().contains(&m) {
        return CheckResult::from_error(&c.name, &c.anchor, &Error::NotMember("m must lie in M".into()));
    }
    let gen = try_check!(c, objs.element(&m, &objs.b.zero()));
    let syz = try_check!(c, syzygy(r, 1, &[gen]));
    let zj = objs.zero_times_j();
    let contains = zj.is_subset(&syz);
    c.push("syzygy_contains_zero_times_j", Witness::Bool(contains));
    c.push("syzygy_equals_zero_times_j", Witness::Bool(syz == zj));
    c.push("syzygy_order", Witness::Text(syz.order().to_string()));
    c.require(contains, "syzygy of (m, f(m)) misses {0}×J");
    if syz != zj {
        c.note("syzygy of (m, f(m)) is larger than {0}×J because m is a zero divisor");
    }

    if let Some((p, u, k)) = cascade {
        let t = try_check!(c, kernel_transfer(objs, p, u, k));
        c.push("k2_matches", Witness::Bool(t.holds()));
        c.require(t.holds(), "first kernel differs from its ⋈-prediction");
        let mut x = t.kerv_max.clone();
        for step in 1..=2 {
            let (next, ok, s, tt) = try_check!(c, cascade_step(objs, &la, &lr, &x));
            c.push(&format!("k{}_shape", 2 - step), Witness::Ints(vec![s as u64, tt as u64]));
            c.push(&format!("k{}_matches", 2 - step), Witness::Bool(ok));
            c.require(ok, &format!("kernel K{} differs from its ⋈-prediction", 2 - step));
            x = next;
        }
    }
    c
}

// ---------------------------------------------------------------- pd profile

pub const ANCHOR_PROFILE: &str = "pd_R(E) ≤ d for n-presented E";

/// All ideals of `r` by closing under `I ↦ I + Rx`.
pub fn all_ideals(r: &FiniteRing) -> Vec<Ideal> {
    let els: Vec<Vec<u64>> = r.elements().collect();
    let zero = Submodule::zero(r, 1);
    let mut seen = BTreeSet::new();
    seen.insert(zero.howell().clone());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for x in &els {
            if cur.contains(x) {
                continue;
            }
            let next = cur.sum(&Submodule::ideal(r, &[x.clone()]).expect("rank 1")).expect("same ring");
            if seen.insert(next.howell().clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.order().to_u128().cmp(&b.order().to_u128()).then_with(|| a.howell().cmp(b.howell())));
    out
}

pub fn pd_profile(r: &FiniteRing, depth: usize, ideal_budget: usize, seed: u64) -> CheckResult {
    let mut c = CheckResult::new("pd_profile", ANCHOR_PROFILE);
    let lr = try_check!(c, LocalRing::new(r));
    let exhaustive = r.order().to_u128().map_or(false, |o| o <= 256);
    let ideals: Vec<Ideal> = if exhaustive {
        all_ideals(r)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set = BTreeSet::new();
        let mut out = Vec::new();
        for _ in 0..ideal_budget {
            let v: Vec<u64> = (0..r.dim()).map(|_| rng.gen_range(0..r.modulus())).collect();
            let i = try_check!(c, Submodule::ideal(r, &[v]));
            if set.insert(i.howell().clone()) {
                out.push(i);
            }
        }
        out
    };
    let mut engine = Engine::new(&lr);
    let mut max_finite: Option<usize> = None;
    let mut infinite = Vec::new();
    let mut examined = 0u64;
    let mut valid = true;
    for i in ideals.iter().filter(|i| i.order() != r.order()) {
        let res = try_check!(c, engine.resolve(&ModuleQuotient::cokernel(r, i.clone()), depth));
        valid &= res.validation.passed();
        examined += 1;
        match res.verdict {
            PdVerdict::Exact(k) => max_finite = Some(max_finite.map_or(k, |m| m.max(k))),
            PdVerdict::AtLeast(_) => infinite.push(i.generators(r).into_iter().flatten().collect::<Vec<u64>>()),
        }
    }
    c.push("exhaustive", Witness::Bool(exhaustive));
    c.push("quotients_examined", Witness::Int(examined));
    if let Some(m) = max_finite {
        c.push("max_finite_pd", Witness::Int(m as u64));
    }
    c.push("at_least_depth_count", Witness::Int(infinite.len() as u64));
    c.push("at_least_depth_ideals", Witness::Vectors(infinite));
    c.require(valid, "resolution validation failed");
    c
}

// ---------------------------------------------------------------- misc jobs

pub const ANCHOR_RING: &str = "ring axioms";
pub const ANCHOR_GLDIM: &str = "gldim R = pd_R(R/m)";

pub fn verify_ring_check(r: &FiniteRing) -> CheckResult {
    let mut c = CheckResult::new("verify_ring", ANCHOR_RING);
    let rep = verify_ring(r);
    c.push("triples_checked", Witness::Int(rep.triples_checked as u64));
    c.push("order", Witness::Text(r.order().to_string()));
    if !rep.passed() {
        c.push("failures", Witness::Text(rep.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")));
    }
    c.require(rep.passed(), "ring axioms fail");
    c
}

pub fn gldim_check(r: &FiniteRing, depth: usize) -> CheckResult {
    let mut c = CheckResult::new("gldim", ANCHOR_GLDIM);
    let lr = try_check!(c, LocalRing::new(r));
    let res = try_check!(c, resolution::global_dimension_signature(&lr, depth));
    c.push("betti_residue_field", betti_witness(&res));
    c.push("verdict", verdict_text(res.verdict));
    c.push("residue_field_order", Witness::Text(lr.residue_field().order().to_string()));
    c.require(res.validation.passed(), "resolution validation failed");
    c
}

// ---------------------------------------------------------------- random inputs

/// Random `u_1..u_r ∈ M^p` and `k_1..k_r ∈ J^p` for the kernel-transfer checks.
pub fn random_transfer_input(objs: &Amalgamation, rng: &mut impl Rng, p: usize, r: usize) -> Result<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    let la = LocalRing::new(&objs.a)?;
    let m_els: Vec<Vec<u64>> = la.maximal().elements(&objs.a).collect();
    let j_els: Vec<Vec<u64>> = objs.j.elements(&objs.b).collect();
    let mut u = Vec::with_capacity(r);
    let mut k = Vec::with_capacity(r);
    for _ in 0..r {
        let mut ui = Vec::new();
        let mut ki = Vec::new();
        for _ in 0..p {
            ui.extend_from_slice(&m_els[rng.gen_range(0..m_els.len())]);
            ki.extend_from_slice(&j_els[rng.gen_range(0..j_els.len())]);
        }
        u.push(ui);
        k.push(ki);
    }
    Ok((u, k))
}
