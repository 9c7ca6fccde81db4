//! Bounded verification suites. Each suite is a list of checks over a
//! window of objects; every check reports pass, fail with a witness, or
//! inconclusive with a reason.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cellular::shuffles::{binomial, shuffles};
use crate::cellular::{
    count_covers, for_each_cover, representable, Cell, CellularSet, LeastCovers, PullbackTable, Sieve, Terminal,
};
use crate::error::{Error, Result};
use crate::homotopy::{
    cofinality_check, cofinality_over_covers, collapse_opfibration, delannoy, fibre_decompositions,
    is_contractible, paths_with_terminus, q_poset, r_poset, Contractibility,
};
use crate::intertwiner::{as_theta_map, partition_counts, suspension, VSimplex};
use crate::nerves::{
    category_globular_set, chaotic_groupoid, count_globular_maps, counterexample_search, nerve_category,
    nerve_suspension, spine_iso_check, suspension_count_formula, suspension_globular_set,
};
use crate::report::{Check, Outcome, VerificationReport};
use crate::theta::{
    compose_gamma, factorizations, fdelta, hom_set, wreath_decode, wreath_decode_morphism, wreath_encode,
    wreath_encode_morphism, DeltaMap, Elements, GammaMap, Theta, ThetaMorphism, Window,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gamma,
    WreathIso,
    Factorization,
    Covers,
    Segal,
    QPosets,
    Opfibration,
    Cofinality,
    Shuffles,
    Intertwiner,
    Counterexample,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Gamma,
        Suite::WreathIso,
        Suite::Factorization,
        Suite::Covers,
        Suite::Segal,
        Suite::QPosets,
        Suite::Opfibration,
        Suite::Cofinality,
        Suite::Shuffles,
        Suite::Intertwiner,
        Suite::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::WreathIso => "wreath-iso",
            Suite::Factorization => "factorization",
            Suite::Covers => "covers",
            Suite::Segal => "segal",
            Suite::QPosets => "q-posets",
            Suite::Opfibration => "opfibration",
            Suite::Cofinality => "cofinality",
            Suite::Shuffles => "shuffles",
            Suite::Intertwiner => "intertwiner",
            Suite::Counterexample => "counterexample",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidArgument(format!("unknown suite {s:?}; expected one of {}, all", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub window: Window,
    /// Largest `a + b` for which `Q(a, b)` is tested for contractibility;
    /// counts are tested one step further.
    pub max_terminus: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            window: Window::new(2, 2),
            max_terminus: 5,
        }
    }
}

/// Objects in `Window(h, w)`, by the recurrence `N(h, w) = Σ_{n ≤ w} N(h-1, w)^n`.
pub fn window_size(window: Window) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..window.max_height {
        let mut total: u128 = 0;
        let mut power: u128 = 1;
        for _ in 0..=window.max_width {
            total = total.saturating_add(power);
            power = power.saturating_mul(n);
        }
        n = total;
    }
    n
}

/// Window objects at which the hom-set and cover enumerations stay at desk
/// scale.
pub const OBJECT_CAP: u128 = 100;
/// The object-only round trip of the wreath suite can afford far more.
pub const ENCODING_CAP: u128 = 1_000_000;
pub const TERMINUS_CAP: usize = 7;

/// The largest window a suite enumerates for `config`.
pub fn effective_window(suite: Suite, config: &VerifyConfig) -> Window {
    let w = config.window;
    match suite {
        Suite::WreathIso => Window::new(w.max_height + 1, w.max_width + 1),
        Suite::Opfibration => Window::new(w.max_height, w.max_width + 1),
        _ => w,
    }
}

/// Refuses windows past the caps, with the object count as the estimate.
pub fn preflight(suites: &[Suite], config: &VerifyConfig) -> Result<()> {
    for &s in suites {
        let cap = if s == Suite::WreathIso { ENCODING_CAP } else { OBJECT_CAP };
        let mut checks = vec![(effective_window(s, config), cap)];
        if s == Suite::WreathIso {
            checks.push((config.window, OBJECT_CAP));
        }
        for (w, cap) in checks {
            let n = window_size(w);
            if n > cap {
                return Err(Error::InvalidArgument(format!(
                    "suite {s} would enumerate {n} objects in the window {w} (cap {cap}); \
                     hom-set and cover enumeration grows much faster than that"
                )));
            }
        }
    }
    if suites.contains(&Suite::QPosets) && config.max_terminus > TERMINUS_CAP {
        return Err(Error::InvalidArgument(format!(
            "--max-terminus {} exceeds the cap {TERMINUS_CAP}; Q(a, b) has D(a, b) elements and its order complex grows faster",
            config.max_terminus
        )));
    }
    Ok(())
}

/// Runs the suites in order; checks inside a suite may run in parallel on
/// the current rayon pool, and come back in a fixed order.
pub fn run(suites: &[Suite], config: &VerifyConfig) -> Vec<VerificationReport> {
    suites.iter().flat_map(|&s| run_suite(s, config)).collect()
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Vec<VerificationReport> {
    type Job<'a> = Box<dyn Fn() -> VerificationReport + Send + Sync + 'a>;
    let c = *config;
    let w = c.window;
    let job = |id: &'static str, certifies: &'static str, window: Window, body: fn(&VerifyConfig) -> Outcome| -> Job<'_> {
        Box::new(move || Check { id, certifies }.run(window, None, || body(&c)))
    };
    let jobs: Vec<Job<'_>> = match suite {
        Suite::Gamma => vec![
            job("gamma.associativity", "gamma-composition-associative", w, gamma_associativity),
            job("gamma.identities", "gamma-composition-unital", w, gamma_identities),
            job("fdelta.functoriality", "fdelta-functor", w, fdelta_functoriality),
        ],
        Suite::WreathIso => vec![
            job("wreath.objects", "wreath-iso-objects", effective_window(suite, &c), wreath_objects),
            job("wreath.hom-sets", "wreath-iso-morphisms", w, wreath_hom_sets),
            job("wreath.composition", "wreath-iso-functor", w, wreath_composition),
        ],
        Suite::Factorization => vec![
            job("factorization.unique", "cospinal-spinal-mono-factorization", w, factorization_unique),
        ],
        Suite::Covers => vec![
            job("covers.epis-are-spinal", "covers-epis-spinal", w, covers_epis_spinal),
            job("covers.spine-and-identity", "covers-spine-and-identity", w, covers_spine_and_identity),
            job("covers.pullback", "covers-pullback-along-spinal", w, covers_pullback),
            job("covers.product-pullback", "covers-product-pullback", w, covers_product_pullback),
        ],
        Suite::Segal => vec![job("segal.cores", "segal-cores-and-spines", w, segal_cores)],
        Suite::QPosets => vec![
            Box::new(move || {
                Check { id: "q.delannoy", certifies: "q-poset-cardinality" }.run(w, Some(c.max_terminus), || {
                    q_delannoy(&c)
                })
            }),
            Box::new(move || {
                Check { id: "q.order", certifies: "q-poset-order" }.run(w, Some(c.max_terminus), || q_order(&c))
            }),
            Box::new(move || {
                Check { id: "q.contractible", certifies: "q-poset-contractible" }
                    .run(w, Some(c.max_terminus), || q_contractible(&c))
            }),
        ],
        Suite::Opfibration => vec![
            job("opfibration.collapse", "collapse-opfibration", effective_window(suite, &c), opfibration_collapse),
            job("opfibration.fibres", "collapse-fibre-products", effective_window(suite, &c), opfibration_fibres),
            job("opfibration.contractible", "r-contractible", effective_window(suite, &c), opfibration_contractible),
            job("opfibration.point-factor", "r-with-point", w, opfibration_point),
        ],
        Suite::Cofinality => vec![
            job("cofinality.covers", "spinal-monos-cofinal-in-covers", w, cofinality_covers),
            job("cofinality.generic-agrees", "spinal-monos-cofinal-in-covers", w, cofinality_generic),
        ],
        Suite::Shuffles => vec![job("shuffles.binomial", "shuffle-count", w, shuffles_binomial)],
        Suite::Intertwiner => vec![
            job("intertwiner.representable", "intertwiner-representable-labels", w, intertwiner_representable),
            job("intertwiner.terminal", "suspension-of-terminal", w, intertwiner_terminal),
            job("intertwiner.partitions", "intertwiner-partition-formula", w, intertwiner_partitions),
        ],
        Suite::Counterexample => vec![
            job("nerves.counts", "nerve-cell-counts", w, nerve_counts),
            job("nerves.spines", "nerve-globular-sums", w, nerve_spines),
            job("counterexample.search", "no-retraction-compatible-homotopy", w, counterexample),
        ],
    };
    jobs.par_iter().map(|j| j()).collect()
}

fn first_failures<T: Serialize>(failures: Vec<T>) -> Vec<T> {
    failures.into_iter().take(5).collect()
}

fn verdict<T: Serialize>(summary: String, failures: Vec<T>) -> Outcome {
    if failures.is_empty() {
        Outcome::Pass(summary)
    } else {
        let n = failures.len();
        Outcome::fail(format!("{n} failures; {summary}"), first_failures(failures))
    }
}

fn gamma_associativity(_: &VerifyConfig) -> Outcome {
    let all: Vec<Vec<Vec<GammaMap>>> = (0..=3)
        .map(|a| (0..=3).map(|b| GammaMap::all(a, b)).collect())
        .collect();
    let mut triples = 0u64;
    let mut failures = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                for d in 0..=3 {
                    for f in &all[a][b] {
                        for g in &all[b][c] {
                            let fg = compose_gamma(f, g).expect("composable");
                            for h in &all[c][d] {
                                triples += 1;
                                let left = compose_gamma(&fg, h).expect("composable");
                                let right = compose_gamma(f, &compose_gamma(g, h).expect("composable"))
                                    .expect("composable");
                                if left != right {
                                    failures.push((f.clone(), g.clone(), h.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    verdict(format!("{triples} composable triples of arity <= 3"), failures)
}

fn gamma_identities(_: &VerifyConfig) -> Outcome {
    let mut n = 0;
    let mut failures = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            for f in GammaMap::all(a, b) {
                n += 1;
                let l = compose_gamma(&GammaMap::identity(a), &f).expect("composable");
                let r = compose_gamma(&f, &GammaMap::identity(b)).expect("composable");
                if l != f || r != f {
                    failures.push(f);
                }
            }
        }
    }
    verdict(format!("{n} maps of arity <= 3"), failures)
}

fn fdelta_functoriality(_: &VerifyConfig) -> Outcome {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for n in 0..=4 {
        if fdelta(&DeltaMap::identity(n)) != GammaMap::identity(n) {
            failures.push(format!("identity of [{n}]"));
        }
    }
    for a in 0..=4 {
        for b in 0..=4 {
            let fs = DeltaMap::all(a, b);
            for c in 0..=4 {
                let gs = DeltaMap::all(b, c);
                for f in &fs {
                    let ff = fdelta(f);
                    for g in &gs {
                        pairs += 1;
                        let lhs = fdelta(&g.after(f).expect("composable"));
                        let rhs = compose_gamma(&ff, &fdelta(g)).expect("composable");
                        if lhs != rhs {
                            failures.push(format!("{:?} then {:?}", f.values(), g.values()));
                        }
                    }
                }
            }
        }
    }
    verdict(format!("{pairs} composable pairs of arity <= 4"), failures)
}

fn wreath_objects(config: &VerifyConfig) -> Outcome {
    let window = effective_window(Suite::WreathIso, config);
    let objs = window.objects();
    let lower = Window::new(window.max_height.saturating_sub(1), window.max_width).objects().len() as u128;
    let expected: u128 = if window.max_height == 0 {
        1
    } else {
        (0..=window.max_width as u32).map(|n| lower.pow(n)).sum()
    };
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    for t in &objs {
        let w = wreath_encode(t);
        if wreath_decode(&w).as_ref() != Ok(t) {
            failures.push(format!("{t} does not round-trip"));
        }
        if !seen.insert(format!("{:?}", (w.arity, &w.labels))) {
            failures.push(format!("{t} shares an encoding"));
        }
    }
    if objs.len() as u128 != expected {
        failures.push(format!("{} objects, but the wreath count is {expected}", objs.len()));
    }
    verdict(format!("{} objects, encodings distinct and decoding inverse", objs.len()), failures)
}

/// `Σ_δ Π_j |Hom(s_{i(j)}, t_j)|` over root maps `δ`.
fn wreath_hom_count(s: &Theta, t: &Theta) -> usize {
    DeltaMap::all(s.arity(), t.arity())
        .iter()
        .map(|d| {
            (1..=s.arity())
                .map(|i| {
                    (d.at(i - 1) + 1..=d.at(i))
                        .map(|j| hom_set(s.child(i), t.child(j)).len())
                        .product::<usize>()
                })
                .product::<usize>()
        })
        .sum()
}

fn wreath_hom_sets(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let mut total = 0;
    let mut failures = Vec::new();
    for s in &objs {
        for t in &objs {
            let homs = hom_set(s, t);
            total += homs.len();
            let mut encoded = Vec::new();
            for f in homs.iter() {
                let w = wreath_encode_morphism(f);
                if wreath_decode_morphism(&w).as_ref() != Ok(f) {
                    failures.push(format!("{f:?} does not round-trip"));
                }
                encoded.push(format!("{w:?}"));
            }
            encoded.sort();
            encoded.dedup();
            let expected = wreath_hom_count(s, t);
            if encoded.len() != homs.len() || homs.len() != expected {
                failures.push(format!("Hom({s}, {t}): {} maps, {} encodings, wreath count {expected}", homs.len(), encoded.len()));
            }
        }
    }
    verdict(format!("{total} morphisms between {} objects", objs.len()), failures)
}

fn wreath_composition(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let objs: Vec<&Theta> = objs.iter().collect();
    let failures: Vec<String> = objs
        .par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in &objs {
                let fs = hom_set(a, b);
                let wfs: Vec<_> = fs.iter().map(wreath_encode_morphism).collect();
                for c in &objs {
                    for g in hom_set(b, c).iter() {
                        let wg = wreath_encode_morphism(g);
                        for (f, wf) in fs.iter().zip(&wfs) {
                            let composite = wg.after(wf).and_then(|x| wreath_decode_morphism(&x));
                            if composite.as_ref() != Ok(&g.after(f)) {
                                out.push(format!("{f:?} then {g:?}"));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let pairs: usize = objs
        .iter()
        .map(|a| {
            objs
                .iter()
                .map(|b| hom_set(a, b).len() * objs.iter().map(|c| hom_set(b, c).len()).sum::<usize>())
                .sum::<usize>()
        })
        .sum();
    verdict(format!("{pairs} composable pairs between {} objects", objs.len()), failures)
}

fn factorization_unique(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let mut total = 0;
    let mut failures = Vec::new();
    for s in &objs {
        for t in &objs {
            for f in hom_set(s, t).iter() {
                total += 1;
                let found = factorizations(f);
                let ok = found.len() == 1 && {
                    let x = &found[0];
                    x.cospinal.is_cospinal() && x.spinal_mono.is_spinal_mono() && x.spinal_mono.after(&x.cospinal) == *f
                };
                if !ok {
                    failures.push(format!("{f:?}: {} factorizations", found.len()));
                }
            }
        }
    }
    verdict(format!("{total} morphisms, each with exactly one factorization"), failures)
}

fn covers_epis_spinal(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let mut epis = 0;
    let mut failures = Vec::new();
    for s in &objs {
        for t in &objs {
            for f in hom_set(s, t).iter().filter(|f| f.is_epi()) {
                epis += 1;
                if !f.is_spinal() {
                    failures.push(format!("{f:?}"));
                }
            }
        }
    }
    verdict(format!("{epis} epimorphisms, all spinal"), failures)
}

fn covers_spine_and_identity(config: &VerifyConfig) -> Outcome {
    let w = config.window;
    let mut failures = Vec::new();
    let objs = w.objects();
    for t in &objs {
        for (name, s) in [("spine", Sieve::spine(t)), ("identity", Sieve::whole(t))] {
            if !s.is_cover(w) || !s.is_cover_exact() {
                failures.push(format!("{name} of {t}"));
            }
        }
    }
    if w.max_height >= 2 && Sieve::boundary(&Theta::globe(2)).is_cover(w) {
        failures.push("the boundary of D_2 passes".into());
    }
    verdict(format!("spine and identity sieves of {} objects", objs.len()), failures)
}

fn cover_bits(s: &Sieve) -> Vec<u64> {
    let n = s.index().mono_count();
    let mut bits = vec![0u64; n.div_ceil(64)];
    for m in (0..n).filter(|&m| s.contains_mono(m)) {
        bits[m / 64] |= 1 << (m % 64);
    }
    bits
}

fn has(bits: &[u64], m: usize) -> bool {
    bits[m / 64] >> (m % 64) & 1 == 1
}

/// Monos a pulled-back sieve needs and the rules it must obey, as in
/// [`PullbackTable::conditions`].
type Conditions = (Vec<usize>, Vec<(usize, usize)>);

/// Every cover of every window object against every spinal map into it.
/// Maps with the same pullback conditions are tested once.
fn covers_pullback(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let mut instances = 0usize;
    let mut tests = 0usize;
    let mut failures = Vec::new();
    for t in &objs {
        let mut distinct: Vec<(Conditions, ThetaMorphism)> = Vec::new();
        let mut maps = 0;
        for s in &objs {
            for f in hom_set(s, t).iter().filter(|f| f.is_spinal()) {
                maps += 1;
                let table = PullbackTable::new(f);
                let (spine, rules) = table.conditions();
                if !distinct.iter().any(|((a, b), _)| a == spine && b == rules) {
                    distinct.push(((spine.to_vec(), rules.to_vec()), f.clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for_each_cover(t, |s| covers.push(cover_bits(s)));
        instances += maps * covers.len();
        tests += distinct.len() * covers.len();
        let bad: Vec<String> = covers
            .par_iter()
            .flat_map_iter(|c| {
                distinct
                    .iter()
                    .filter(|(conditions, _)| !pulls_to_cover(conditions, c))
                    .map(|(_, f)| format!("cover {c:?} of {t} along {f}"))
                    .collect::<Vec<_>>()
            })
            .collect();
        failures.extend(bad);
    }
    verdict(
        format!("{instances} (cover, spinal map) pairs, {tests} distinct pullback tests"),
        failures,
    )
}

/// Direct enumeration is limited to targets with at most this many covers;
/// past it the least-cover reduction decides.
const DIRECT_COVERS: usize = 2_000;

fn pulls_to_cover(id: &Conditions, c: &[u64]) -> bool {
    id.0.iter().all(|&i| has(c, i)) && id.1.iter().all(|&(a, b)| !has(c, a) || has(c, b))
}

/// For spinal `f: p -> s`, `g: p -> t` and covers `S`, `T`, the meet
/// `f*S ∧ g*T` is a cover of `p`. Covers are closed under meets, so this
/// holds iff each side pulls every cover back to a cover, which the least
/// covers decide; where the cover lists are short it is also enumerated.
fn covers_product_pullback(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let least: Vec<LeastCovers> = objs.iter().map(LeastCovers::new).collect();
    let all_covers: Vec<Option<Vec<Sieve>>> = objs
        .iter()
        .map(|t| (count_covers(t) <= DIRECT_COVERS).then(|| crate::cellular::covers(t)))
        .collect();
    let results: Vec<(usize, usize, usize, Vec<String>)> = objs
        .par_iter()
        .map(|p| {
            let id = PullbackTable::new(&ThetaMorphism::identity(p));
            let id = (id.conditions().0.to_vec(), id.conditions().1.to_vec());
            let mut maps = 0;
            let mut failures = Vec::new();
            let mut families: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut nominal_per_map: Vec<usize> = Vec::new();
            for (k, s) in objs.iter().enumerate() {
                for f in hom_set(p, s).iter().filter(|f| f.is_spinal()) {
                    maps += 1;
                    let table = PullbackTable::new(f);
                    if !table.pulls_back_every_cover(&least[k]) {
                        failures.push(format!("{f} pulls some cover back to a non-cover"));
                    }
                    if let Some(covers) = &all_covers[k] {
                        nominal_per_map.push(covers.len());
                        let mut family: Vec<Vec<u64>> = covers.iter().map(|c| cover_bits(&table.pull(c))).collect();
                        family.sort();
                        family.dedup();
                        if !families.contains(&family) {
                            families.push(family);
                        }
                    }
                }
            }
            let nominal: usize = nominal_per_map.iter().sum::<usize>().pow(2);
            let mut direct = 0;
            let mut meets: Vec<Vec<u64>> = Vec::new();
            for a in &families {
                for b in &families {
                    for x in a {
                        for y in b {
                            direct += 1;
                            meets.push(x.iter().zip(y).map(|(u, v)| u & v).collect());
                        }
                    }
                }
            }
            meets.sort();
            meets.dedup();
            for m in meets.iter().filter(|m| !pulls_to_cover(&id, m)) {
                failures.push(format!("a meet of pulled-back covers of {p} is not a cover: {m:?}"));
            }
            (maps * maps, nominal, direct, failures)
        })
        .collect();
    let pairs: usize = results.iter().map(|r| r.0).sum();
    let nominal: usize = results.iter().map(|r| r.1).sum();
    let direct: usize = results.iter().map(|r| r.2).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.3).collect();
    verdict(
        format!(
            "{pairs} spinal pairs over all covers by least covers; {nominal} instances on targets with <= {DIRECT_COVERS} covers, checked through {direct} meets of distinct pulled-back sieves"
        ),
        failures,
    )
}

fn segal_cores(config: &VerifyConfig) -> Outcome {
    let w = config.window;
    if w.max_height == 0 {
        return Outcome::Pass("no Segal cores below height 1".into());
    }
    let labels = Window::new(w.max_height - 1, w.max_width).objects();
    let mut n = 0;
    let mut failures = Vec::new();
    for c in &labels {
        n += 1;
        if !Sieve::segal_core(1, std::slice::from_ref(c)).map(|s| s.is_whole()).unwrap_or(false) {
            failures.push(format!("one-edge core over {c}"));
        }
    }
    for k in 0..=w.max_width {
        n += 1;
        let points = vec![Theta::point(); k];
        if Sieve::segal_core(k, &points).ok() != Some(Sieve::spine(&Theta::lift(k))) {
            failures.push(format!("core of [{k}]"));
        }
        let mut tuples: Vec<Vec<Theta>> = vec![vec![]];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    labels.iter().map(move |c| {
                        let mut u = t.clone();
                        u.push(c.clone());
                        u
                    })
                })
                .collect();
        }
        for ts in tuples {
            n += 1;
            let spines: Vec<Sieve> = ts.iter().map(Sieve::spine).collect();
            let core = Sieve::segal_core_of(k, &spines);
            if core.ok() != Some(Sieve::spine(&Theta::node(ts.clone()))) {
                failures.push(format!("core of spines over {}", Theta::node(ts)));
            }
        }
    }
    verdict(format!("{n} cores"), failures)
}

fn q_delannoy(config: &VerifyConfig) -> Outcome {
    let bound = config.max_terminus + 1;
    let mut failures = Vec::new();
    let mut n = 0;
    for a in 0..=bound {
        for b in 0..=(bound - a) {
            n += 1;
            let count = paths_with_terminus(a, b).len() as u64;
            if count != delannoy(a, b) {
                failures.push(format!("Q({a}, {b}) has {count} elements, D = {}", delannoy(a, b)));
            }
        }
    }
    if bound >= 4 && paths_with_terminus(2, 2).len() != 13 {
        failures.push("Q(2, 2) is not 13".into());
    }
    verdict(format!("{n} termini with a + b <= {bound}"), failures)
}

fn q_order(config: &VerifyConfig) -> Outcome {
    let bound = config.max_terminus.min(5);
    let mut failures = Vec::new();
    for a in 0..=bound {
        for b in 0..=(bound - a) {
            let q = q_poset(a, b);
            if !q.order.is_partial_order() {
                failures.push(format!("Q({a}, {b}) is not a partial order"));
            }
            let points: Vec<BTreeSet<(usize, usize)>> =
                q.paths.iter().map(|p| p.points().into_iter().collect()).collect();
            for x in 0..q.paths.len() {
                for y in 0..q.paths.len() {
                    if q.order.le(x, y) != points[x].is_subset(&points[y]) {
                        failures.push(format!("{} vs {}", q.paths[x], q.paths[y]));
                    }
                }
            }
        }
    }
    verdict(format!("order on Q(a, b), a + b <= {bound}, is inclusion of visited points"), failures)
}

fn q_contractible(config: &VerifyConfig) -> Outcome {
    let bound = config.max_terminus;
    let mut failures = Vec::new();
    let mut inconclusive = Vec::new();
    let mut n = 0;
    for a in 0..=bound {
        for b in 0..=(bound - a) {
            if a + b == 0 {
                continue;
            }
            n += 1;
            match is_contractible(&q_poset(a, b).order) {
                Contractibility::Contractible { .. } => {}
                Contractibility::NontrivialHomology { homology } => failures.push((a, b, homology)),
                Contractibility::Inconclusive { reason } => inconclusive.push(format!("Q({a}, {b}): {reason}")),
            }
        }
    }
    if !failures.is_empty() {
        return verdict(String::new(), failures);
    }
    if !inconclusive.is_empty() {
        return Outcome::Inconclusive {
            summary: format!("{} of {n} posets undecided", inconclusive.len()),
            reason: inconclusive.join("; "),
        };
    }
    Outcome::Pass(format!("{n} posets Q(a, b) with 1 <= a + b <= {bound} contractible"))
}

/// Pairs with both heights inside the window and `w(s) + w(t)` at most the
/// effective width.
fn opfibration_pairs(config: &VerifyConfig) -> Vec<(Theta, Theta)> {
    let window = effective_window(Suite::Opfibration, config);
    let objs = window.objects();
    let mut out = Vec::new();
    for s in &objs {
        for t in &objs {
            if s.width() + t.width() <= window.max_width {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

fn opfibration_collapse(config: &VerifyConfig) -> Outcome {
    let pairs = opfibration_pairs(config);
    let failures: Vec<_> = pairs
        .par_iter()
        .map(|(s, t)| collapse_opfibration(s, t))
        .filter(|r| !r.is_opfibration())
        .collect();
    verdict(format!("{} pairs", pairs.len()), failures)
}

fn opfibration_fibres(config: &VerifyConfig) -> Outcome {
    let pairs = opfibration_pairs(config);
    let results: Vec<(usize, Vec<String>)> = pairs
        .par_iter()
        .map(|(s, t)| {
            let r = r_poset(s, t);
            let reports = fibre_decompositions(&r);
            let total: usize = reports.iter().map(|f| f.fibre_size).sum();
            let mut bad: Vec<String> = reports
                .iter()
                .filter(|f| !f.holds())
                .map(|f| format!("{s} x {t} over {}: {f:?}", f.path))
                .collect();
            if total != r.len() {
                bad.push(format!("{s} x {t}: fibres hold {total} of {} cells", r.len()));
            }
            (reports.len(), bad)
        })
        .collect();
    let n: usize = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    verdict(format!("{n} fibres over {} pairs", pairs.len()), failures)
}

/// Order complexes past this many cells are left to the collapse argument.
const R_COMPLEX_CAP: usize = 30;

fn opfibration_contractible(config: &VerifyConfig) -> Outcome {
    let pairs = opfibration_pairs(config);
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .filter_map(|(s, t)| {
            let r = r_poset(s, t);
            (r.len() <= R_COMPLEX_CAP).then(|| match is_contractible(&r.order) {
                Contractibility::Contractible { .. } => None,
                other => Some(format!("{s} x {t}: {other:?}")),
            })
        })
        .collect();
    let n = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    verdict(format!("{n} of {} pairs with |R| <= {R_COMPLEX_CAP}", pairs.len()), failures)
}

fn opfibration_point(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let failures: Vec<String> = objs
        .iter()
        .filter(|s| r_poset(s, &Theta::point()).len() != 1 || r_poset(&Theta::point(), s).len() != 1)
        .map(|s| s.to_string())
        .collect();
    verdict(format!("R(s, [0]) and R([0], s) are points for {} objects", objs.len()), failures)
}

fn cofinality_covers(config: &VerifyConfig) -> Outcome {
    let objs = config.window.objects();
    let summaries: Vec<_> = objs.par_iter().map(|t| cofinality_over_covers(t, 3)).collect();
    let n: usize = summaries.iter().map(|s| s.proper_covers).sum();
    let failures: Vec<_> = summaries.into_iter().filter(|s| !s.failures.is_empty()).collect();
    verdict(format!("{n} proper covers of {} objects", objs.len()), failures)
}

/// The coslice search on the full subdivision, on objects whose covers stay
/// few, must agree with the tabulated check.
fn cofinality_generic(config: &VerifyConfig) -> Outcome {
    let objs: Vec<Theta> = config.window.objects().into_iter().filter(|o| count_covers(o) <= 64).collect();
    let mut n = 0;
    let mut failures = Vec::new();
    for t in &objs {
        for s in crate::cellular::covers(t).iter().filter(|s| !s.is_whole()) {
            n += 1;
            if let Err(e) = cofinality_check(s) {
                failures.push(e);
            }
        }
    }
    verdict(format!("{n} proper covers searched directly on {} objects", objs.len()), failures)
}

/// Pairs of monotone surjections `[n+m] -> [n]`, `[n+m] -> [m]` that are
/// jointly injective: the lattice paths of the product.
fn brute_force_shuffles(n: usize, m: usize) -> usize {
    let left: Vec<DeltaMap> = DeltaMap::all(n + m, n).into_iter().filter(DeltaMap::is_surjective).collect();
    let right: Vec<DeltaMap> = DeltaMap::all(n + m, m).into_iter().filter(DeltaMap::is_surjective).collect();
    let mut count = 0;
    for a in &left {
        for b in &right {
            let mut pts: Vec<(usize, usize)> = a.values().iter().copied().zip(b.values().iter().copied()).collect();
            pts.sort_unstable();
            pts.dedup();
            if pts.len() == n + m + 1 {
                count += 1;
            }
        }
    }
    count
}

fn shuffles_binomial(_: &VerifyConfig) -> Outcome {
    let mut failures = Vec::new();
    let mut n_pairs = 0;
    for n in 0..=5usize {
        for m in 0..=(5 - n) {
            n_pairs += 1;
            let sh = shuffles(&Theta::lift(n), &Theta::lift(m));
            let brute = brute_force_shuffles(n, m);
            let b = binomial((n + m) as u64, n as u64) as usize;
            let shapes_ok = sh
                .iter()
                .all(|x| x.shape == Theta::lift(n + m) && x.left.is_epi() && x.right.is_epi());
            if sh.len() != b || brute != b || !shapes_ok {
                failures.push(format!("({n}, {m}): {} shuffles, brute force {brute}, binomial {b}", sh.len()));
            }
        }
    }
    verdict(format!("{n_pairs} pairs with n + m <= 5"), failures)
}

fn intertwiner_representable(config: &VerifyConfig) -> Outcome {
    let w = config.window;
    let labels = Window::new(w.max_height.saturating_sub(1), w.max_width).objects();
    let shapes = w.objects();
    let mut tuples: Vec<Vec<Theta>> = vec![vec![]];
    let mut all = vec![vec![]];
    for _ in 0..3 {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                labels.iter().map(move |c| {
                    let mut u = t.clone();
                    u.push(c.clone());
                    u
                })
            })
            .collect();
        all.extend(tuples.iter().cloned());
    }
    let failures: Vec<String> = all
        .par_iter()
        .flat_map_iter(|ts| {
            let v = VSimplex::new(ts.iter().map(representable).collect());
            let target = Theta::node(ts.clone());
            let mut out = Vec::new();
            for theta in &shapes {
                let cells = v.cells(theta);
                let mut maps: Vec<ThetaMorphism> = cells
                    .iter()
                    .filter_map(|c| as_theta_map(theta, &target, c).ok())
                    .collect();
                maps.sort();
                maps.dedup();
                let homs = hom_set(theta, &target);
                if maps.len() != cells.len() || maps.as_slice() != homs.as_slice() {
                    out.push(format!("{theta} into {target}: {} cells, {} maps", cells.len(), homs.len()));
                }
            }
            out
        })
        .collect();
    verdict(format!("{} label tuples of length <= 3 on {} shapes", all.len(), shapes.len()), failures)
}

/// Labels of the terminal are points, so a cell is its root and a map into
/// `D_1` is determined by its root.
fn intertwiner_terminal(config: &VerifyConfig) -> Outcome {
    let st = suspension(Arc::new(Terminal));
    let d1 = Theta::globe(1);
    let mut failures = Vec::new();
    let shapes = config.window.objects();
    for theta in &shapes {
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for c in st.cells(theta) {
            match c {
                Cell::Wreath { root, labels } if labels.iter().all(|l| matches!(l, Cell::Point)) => cells.push(root),
                other => failures.push(format!("{theta}: unexpected cell {other}")),
            }
        }
        cells.sort();
        let mut roots: Vec<Vec<usize>> = hom_set(theta, &d1).iter().map(|f| f.root_values().to_vec()).collect();
        roots.sort();
        if cells != roots {
            failures.push(format!("{theta}: {} cells, {} maps", cells.len(), roots.len()));
        }
    }
    verdict(format!("{} shapes", shapes.len()), failures)
}

fn intertwiner_partitions(config: &VerifyConfig) -> Outcome {
    let a = representable(&Theta::globe(1));
    let x = representable(&Theta::lift(2));
    let b = representable(&Theta::point());
    let mut failures = Vec::new();
    let shapes = config.window.objects();
    for theta in &shapes {
        for (left, right) in [
            (vec![], vec![]),
            (vec![a.clone()], vec![]),
            (vec![], vec![b.clone()]),
            (vec![a.clone()], vec![b.clone(), a.clone()]),
        ] {
            let pc = partition_counts(&left, &x, &right, theta);
            if !pc.consistent() {
                failures.push(pc);
            }
        }
    }
    verdict(format!("4 splittings on {} shapes", shapes.len()), failures)
}

fn nerve_counts(config: &VerifyConfig) -> Outcome {
    let g2 = chaotic_groupoid(2).expect("two objects");
    let j = nerve_category(&g2);
    let x = nerve_suspension(&g2);
    let mut failures = Vec::new();
    let shapes = config.window.objects();
    for theta in &shapes {
        let e = Elements::of(theta).globular;
        let h = theta.height();
        let jc = j.cells(theta).len();
        let xc = x.cells(theta).len();
        let j_direct = count_globular_maps(&e, &category_globular_set(&g2, h));
        let x_direct = count_globular_maps(&e, &suspension_globular_set(&g2, h));
        if jc != 1 << (theta.arity() + 1) || jc != j_direct || xc != suspension_count_formula(theta) || xc != x_direct {
            failures.push(format!("{theta}: J {jc} (direct {j_direct}), X {xc} (direct {x_direct})"));
        }
    }
    verdict(format!("{} shapes against direct functor counts", shapes.len()), failures)
}

fn nerve_spines(config: &VerifyConfig) -> Outcome {
    let g2 = chaotic_groupoid(2).expect("two objects");
    let j = nerve_category(&g2);
    let x = nerve_suspension(&g2);
    let shapes = config.window.objects();
    let failures: Vec<String> = shapes
        .iter()
        .filter(|t| !spine_iso_check(&j, t) || !spine_iso_check(&x, t))
        .map(|t| t.to_string())
        .collect();
    verdict(format!("cells of J and X over {} shapes are determined by their spines", shapes.len()), failures)
}

fn counterexample(config: &VerifyConfig) -> Outcome {
    let r = counterexample_search(config.window);
    let summary = format!(
        "{} solutions ({} retraction-compatible) over {} variables; positive control {}",
        r.endpoint_solutions, r.retraction_solutions, r.variables, r.positive_control_solutions
    );
    if !r.conclusive {
        return Outcome::Inconclusive {
            summary,
            reason: r.reason.unwrap_or_default(),
        };
    }
    if r.passes() {
        Outcome::Pass(summary)
    } else {
        Outcome::fail(summary, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use proptest::prelude::*;

    #[test]
    fn window_sizes() {
        assert_eq!(window_size(Window::new(2, 2)), 13);
        assert_eq!(window_size(Window::new(2, 3)), 85);
        assert_eq!(window_size(Window::new(3, 3)), 621_436);
        for (h, w) in [(0, 3), (1, 3), (2, 2), (2, 3), (3, 2)] {
            let window = Window::new(h, w);
            assert_eq!(window_size(window), window.objects().len() as u128);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 11);
        assert!(Suite::parse_list("everything").is_err());
    }

    #[test]
    fn preflight_caps() {
        let ok = VerifyConfig::default();
        assert!(preflight(&Suite::ALL, &ok).is_ok());
        let wide = VerifyConfig { window: Window::new(2, 4), ..ok };
        assert!(preflight(&[Suite::Gamma], &wide).is_err());
        let deep = VerifyConfig { max_terminus: 8, ..ok };
        assert!(preflight(&[Suite::QPosets], &deep).is_err());
        assert!(preflight(&[Suite::Shuffles], &deep).is_ok());
    }

    #[test]
    fn small_window_reports() {
        let config = VerifyConfig { window: Window::new(1, 2), max_terminus: 3 };
        let suites = [Suite::Factorization, Suite::Covers, Suite::Segal, Suite::Intertwiner, Suite::Counterexample];
        for r in run(&suites, &config) {
            assert!(r.is_well_formed(), "{r}");
            let expected = if r.check_id == "counterexample.search" { Status::Inconclusive } else { Status::Pass };
            assert_eq!(r.status, expected, "{r}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn runs_are_deterministic(h in 0usize..=2, w in 0usize..=2) {
            let config = VerifyConfig { window: Window::new(h, w), max_terminus: 3 };
            let strip = |rs: Vec<VerificationReport>| -> Vec<(String, Status, String)> {
                rs.into_iter().map(|r| (r.check_id, r.status, r.summary)).collect()
            };
            let a = strip(run(&[Suite::Segal, Suite::Opfibration], &config));
            let b = strip(run(&[Suite::Segal, Suite::Opfibration], &config));
            prop_assert_eq!(a, b);
        }
    }
}
