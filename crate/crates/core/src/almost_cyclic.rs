//! Conjugate generators of finite groups and table-level checks of the
//! structural facts about them.
//!
//! An element `x` is a conjugate generator when every `y` has some `a` and
//! `n` with `a·y·a⁻¹ = xⁿ`; a group with one is almost cyclic. The
//! `check_*` methods on [`Analysis`] each verify one consequence of that
//! definition on a concrete group and report a [`LemmaCheckResult`] whose
//! counterexample, if any, can be replayed against the Cayley table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::group::{CosetQuotient, Element, FiniteGroup, Subgroup, IDENTITY};

/// `conjugator · element · conjugator⁻¹ = generator^exponent`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub element: Element,
    pub conjugator: Element,
    pub exponent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjGenCertificate {
    pub generator: Element,
    /// One witness per element, in element order.
    pub witnesses: Vec<Witness>,
}

impl ConjGenCertificate {
    /// Replays every witness against the table.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        self.witnesses.len() == g.order()
            && self.witnesses.iter().enumerate().all(|(i, w)| {
                w.element == i
                    && g.conjugate(w.conjugator, w.element)
                        == g.pow(self.generator, w.exponent as i64)
            })
    }
}

/// Exhaustive search: for each `y` in index order, the first `(a, n)` in
/// lexicographic order with `a·y·a⁻¹ = xⁿ`, `0 ≤ n < ord(x)`.
pub fn is_conjugate_generator(g: &FiniteGroup, x: Element) -> Option<ConjGenCertificate> {
    let log = discrete_logs(g, x);
    let witnesses = g
        .elements()
        .map(|y| {
            // xⁿ are distinct for n < ord(x), so for fixed a at most one n fits
            g.elements().find_map(|a| {
                log[g.conjugate(a, y)].map(|exponent| Witness {
                    element: y,
                    conjugator: a,
                    exponent,
                })
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(ConjGenCertificate {
        generator: x,
        witnesses,
    })
}

pub fn conjugate_generators(g: &FiniteGroup) -> Vec<Element> {
    g.elements()
        .filter(|&x| is_conjugate_generator(g, x).is_some())
        .collect()
}

pub fn is_almost_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| is_conjugate_generator(g, x).is_some())
}

/// `log[xⁿ] = Some(n)` for `0 ≤ n < ord(x)`.
fn discrete_logs(g: &FiniteGroup, x: Element) -> Vec<Option<usize>> {
    let mut log = vec![None; g.order()];
    for (n, p) in g.powers(x).into_iter().enumerate() {
        log[p] = Some(n);
    }
    log
}

/// Least `m ≥ 1` with `x^m ∈ members`.
fn least_power_in(g: &FiniteGroup, x: Element, mask: &[bool]) -> usize {
    let mut p = x;
    let mut m = 1;
    while !mask[p] {
        p = g.mul(p, x);
        m += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    CenterInCyclic,
    UnionOfConjugates,
    FiniteAlmostCyclicIffCyclic,
    QuotientConjugateGenerator,
    ConjugateIntersection,
    NormalIntersection,
    PrimeOrderConjugateGenerator,
    CyclicQuotient,
    ExponentProperty,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::CenterInCyclic,
        LemmaId::UnionOfConjugates,
        LemmaId::FiniteAlmostCyclicIffCyclic,
        LemmaId::QuotientConjugateGenerator,
        LemmaId::ConjugateIntersection,
        LemmaId::NormalIntersection,
        LemmaId::PrimeOrderConjugateGenerator,
        LemmaId::CyclicQuotient,
        LemmaId::ExponentProperty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::CenterInCyclic => "center_in_cyclic",
            LemmaId::UnionOfConjugates => "union_of_conjugates",
            LemmaId::FiniteAlmostCyclicIffCyclic => "finite_almost_cyclic_iff_cyclic",
            LemmaId::QuotientConjugateGenerator => "quotient_conjugate_generator",
            LemmaId::ConjugateIntersection => "conjugate_intersection",
            LemmaId::NormalIntersection => "normal_intersection",
            LemmaId::PrimeOrderConjugateGenerator => "prime_order_conjugate_generator",
            LemmaId::CyclicQuotient => "cyclic_quotient",
            LemmaId::ExponentProperty => "exponent_property",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A concrete violation. [`Counterexample::confirms`] re-derives the
/// violation from the table without going through the check that found it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    CentralElementOutsideCyclic {
        generator: Element,
        central: Element,
    },
    UnionCoversGroup {
        subgroup: Vec<Element>,
    },
    UnionBoundExceeded {
        subgroup: Vec<Element>,
        conjugates: usize,
        union_size: usize,
    },
    AlmostCyclicMismatch {
        almost_cyclic: bool,
        cyclic: bool,
    },
    ProjectionNotConjugateGenerator {
        normal: Vec<Element>,
        generator: Element,
    },
    NoNontrivialIntersection {
        subgroup: Vec<Element>,
        generator: Element,
    },
    IntersectionNotGeneratedByLeastPower {
        normal: Vec<Element>,
        generator: Element,
        least_power: usize,
    },
    PrimeOrderGroupNotSimple {
        generator: Element,
        prime: usize,
        normal: Vec<Element>,
    },
    PrimeOrderGroupTooLarge {
        generator: Element,
        prime: usize,
        order: usize,
    },
    NoPowerGeneratesQuotient {
        normal: Vec<Element>,
        generator: Element,
    },
    NotConjugatedInsideNormal {
        normal: Vec<Element>,
        generator: Element,
        least_power: usize,
        element: Element,
    },
    LeastPowerNotQuotientExponent {
        normal: Vec<Element>,
        generator: Element,
        least_power: usize,
        element: Element,
    },
    OrderNotExponent {
        generator: Element,
        element: Element,
    },
}

impl Counterexample {
    /// True when the recorded witness really violates the statement in `g`.
    pub fn confirms(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        let in_range = |v: &[Element]| v.iter().all(|&e| e < n);
        let as_mask = |v: &[Element]| {
            let mut m = vec![false; n];
            v.iter().for_each(|&e| m[e] = true);
            m
        };
        let commutes_with_all = |z: Element| g.elements().all(|a| g.mul(a, z) == g.mul(z, a));
        let conj_gen = |x: Element| x < n && is_conjugate_generator(g, x).is_some();
        let power_list = |x: Element| {
            let mut out = vec![IDENTITY];
            let mut p = x;
            while p != IDENTITY {
                out.push(p);
                p = g.mul(p, x);
            }
            out
        };
        let is_closed = |v: &[Element]| {
            let m = as_mask(v);
            m[IDENTITY] && v.iter().all(|&a| v.iter().all(|&b| m[g.mul(a, b)]))
        };
        let is_normal_set = |v: &[Element]| {
            let m = as_mask(v);
            g.elements()
                .all(|a| v.iter().all(|&h| m[g.conjugate(a, h)]))
        };
        match self {
            Counterexample::CentralElementOutsideCyclic { generator, central } => {
                *central < n
                    && conj_gen(*generator)
                    && commutes_with_all(*central)
                    && !power_list(*generator).contains(central)
            }
            Counterexample::UnionCoversGroup { subgroup } => {
                in_range(subgroup) && is_closed(subgroup) && subgroup.len() < n && {
                    let mut covered = vec![false; n];
                    for a in g.elements() {
                        for &h in subgroup {
                            covered[g.conjugate(a, h)] = true;
                        }
                    }
                    covered.iter().all(|&c| c)
                }
            }
            Counterexample::UnionBoundExceeded {
                subgroup,
                conjugates,
                union_size,
            } => {
                in_range(subgroup) && is_closed(subgroup) && {
                    let mut covered = vec![false; n];
                    let mut distinct: Vec<Vec<bool>> = Vec::new();
                    for a in g.elements() {
                        let mut c = vec![false; n];
                        for &h in subgroup {
                            c[g.conjugate(a, h)] = true;
                            covered[g.conjugate(a, h)] = true;
                        }
                        if !distinct.contains(&c) {
                            distinct.push(c);
                        }
                    }
                    let size = covered.iter().filter(|&&c| c).count();
                    let k = distinct.len();
                    k == *conjugates && size == *union_size && size + (k - 1) > k * subgroup.len()
                }
            }
            Counterexample::AlmostCyclicMismatch {
                almost_cyclic,
                cyclic,
            } => {
                let ac = g.elements().any(conj_gen);
                let cy = g.elements().any(|a| power_list(a).len() == n);
                ac == *almost_cyclic && cy == *cyclic && ac != cy
            }
            Counterexample::ProjectionNotConjugateGenerator { normal, generator } => {
                in_range(normal)
                    && is_closed(normal)
                    && is_normal_set(normal)
                    && conj_gen(*generator)
                    && {
                        // xN conjugate generator of G/N ⇔ every g has a with a·g·a⁻¹ ∈ xⁿN
                        let m = as_mask(normal);
                        let powers = power_list(*generator);
                        !g.elements().all(|y| {
                            g.elements().any(|a| {
                                let c = g.conjugate(a, y);
                                powers.iter().any(|&p| m[g.mul(g.inverse(p), c)])
                            })
                        })
                    }
            }
            Counterexample::NoNontrivialIntersection {
                subgroup,
                generator,
            } => {
                in_range(subgroup)
                    && is_closed(subgroup)
                    && subgroup.len() > 1
                    && conj_gen(*generator)
                    && {
                        let powers = power_list(*generator);
                        g.elements().all(|a| {
                            subgroup
                                .iter()
                                .all(|&h| h == IDENTITY || !powers.contains(&g.conjugate(a, h)))
                        })
                    }
            }
            Counterexample::IntersectionNotGeneratedByLeastPower {
                normal,
                generator,
                least_power,
            } => {
                in_range(normal) && is_closed(normal) && conj_gen(*generator) && {
                    let m = as_mask(normal);
                    let powers = power_list(*generator);
                    let mut inter: Vec<Element> =
                        powers.iter().copied().filter(|&p| m[p]).collect();
                    inter.sort_unstable();
                    let gen_power = powers[*least_power % powers.len()];
                    let mut from_power = power_list(gen_power);
                    from_power.sort_unstable();
                    // the intersection must also be nontrivial
                    inter != from_power || inter.len() == 1
                }
            }
            Counterexample::PrimeOrderGroupNotSimple {
                generator,
                prime,
                normal,
            } => {
                conj_gen(*generator)
                    && power_list(*generator).len() == *prime
                    && in_range(normal)
                    && is_closed(normal)
                    && is_normal_set(normal)
                    && normal.len() > 1
                    && normal.len() < n
            }
            Counterexample::PrimeOrderGroupTooLarge {
                generator,
                prime,
                order,
            } => {
                conj_gen(*generator)
                    && power_list(*generator).len() == *prime
                    && *order == n
                    && n != *prime
            }
            Counterexample::NoPowerGeneratesQuotient { normal, generator } => {
                in_range(normal)
                    && is_closed(normal)
                    && is_normal_set(normal)
                    && conj_gen(*generator)
                    && {
                        // xᵏN generates G/N ⇔ ⟨xᵏ⟩N = G
                        let m = as_mask(normal);
                        !power_list(*generator).iter().any(|&xk| {
                            let mut covered = vec![false; n];
                            for p in power_list(xk) {
                                for (h, _) in m.iter().enumerate().filter(|(_, &b)| b) {
                                    covered[g.mul(p, h)] = true;
                                }
                            }
                            covered.iter().all(|&c| c)
                        })
                    }
            }
            Counterexample::NotConjugatedInsideNormal {
                normal,
                generator,
                least_power,
                element,
            } => {
                in_range(normal) && conj_gen(*generator) && normal.contains(element) && {
                    let xm = g.pow(*generator, *least_power as i64);
                    let powers = power_list(xm);
                    !normal
                        .iter()
                        .any(|&z| powers.contains(&g.conjugate(z, *element)))
                }
            }
            Counterexample::LeastPowerNotQuotientExponent {
                normal,
                generator,
                least_power,
                element,
            } => {
                in_range(normal) && conj_gen(*generator) && *element < n && {
                    let m = as_mask(normal);
                    !m[g.pow(*element, *least_power as i64)]
                }
            }
            Counterexample::OrderNotExponent { generator, element } => {
                conj_gen(*generator) && *element < n && {
                    let k = power_list(*generator).len();
                    g.pow(*element, k as i64) != IDENTITY
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheckResult {
    pub lemma: LemmaId,
    pub group: String,
    pub passed: bool,
    /// Passed only because no instance satisfied the hypotheses.
    pub vacuous: bool,
    pub counterexample: Option<Counterexample>,
    pub details: String,
}

impl LemmaCheckResult {
    fn pass(lemma: LemmaId, group: &str, details: String) -> Self {
        LemmaCheckResult {
            lemma,
            group: group.to_string(),
            passed: true,
            vacuous: false,
            counterexample: None,
            details,
        }
    }

    fn vacuous(lemma: LemmaId, group: &str, reason: &str) -> Self {
        LemmaCheckResult {
            lemma,
            group: group.to_string(),
            passed: true,
            vacuous: true,
            counterexample: None,
            details: format!("vacuous: {reason}"),
        }
    }

    fn fail(lemma: LemmaId, group: &str, cx: Counterexample, details: String) -> Self {
        LemmaCheckResult {
            lemma,
            group: group.to_string(),
            passed: false,
            vacuous: false,
            counterexample: Some(cx),
            details,
        }
    }

    /// Folds per-instance results of one lemma into a single record.
    fn aggregate(lemma: LemmaId, group: &str, results: Vec<LemmaCheckResult>, none: &str) -> Self {
        if let Some(failed) = results.iter().find(|r| !r.passed) {
            return failed.clone();
        }
        let substantive = results.iter().filter(|r| !r.vacuous).count();
        if substantive == 0 {
            return Self::vacuous(lemma, group, none);
        }
        Self::pass(lemma, group, format!("{substantive} instance(s) verified"))
    }
}

/// Analysis context for one group: caches its conjugate generators.
pub struct Analysis<'g> {
    group: &'g FiniteGroup,
    name: String,
    conj_gens: Vec<Element>,
}

const NO_CONJ_GEN: &str = "the group has no conjugate generator";

impl<'g> Analysis<'g> {
    pub fn new(group: &'g FiniteGroup, name: impl Into<String>) -> Self {
        Analysis {
            group,
            name: name.into(),
            conj_gens: conjugate_generators(group),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn conjugate_generators(&self) -> &[Element] {
        &self.conj_gens
    }

    pub fn is_almost_cyclic(&self) -> bool {
        !self.conj_gens.is_empty()
    }

    fn require_conj_gen(&self, x: Element) -> Result<(), AnalysisError> {
        if self.conj_gens.binary_search(&x).is_ok() {
            Ok(())
        } else {
            Err(AnalysisError::NotConjugateGenerator(x))
        }
    }

    fn require_normal(&self, n: &Subgroup<'_>) -> Result<(), AnalysisError> {
        match self.group.normality_violation(n) {
            None => Ok(()),
            Some((conjugator, member)) => {
                Err(crate::error::GroupError::NotNormal { conjugator, member }.into())
            }
        }
    }

    /// The center lies in `⟨x⟩` for every conjugate generator `x`.
    pub fn check_center_lemma(&self) -> LemmaCheckResult {
        let lemma = LemmaId::CenterInCyclic;
        if self.conj_gens.is_empty() {
            return LemmaCheckResult::vacuous(lemma, &self.name, NO_CONJ_GEN);
        }
        let g = self.group;
        let center = g.center();
        for &x in &self.conj_gens {
            let cyc = g.cyclic_subgroup(x);
            if let Some(&z) = center.members().iter().find(|&&z| !cyc.contains(z)) {
                return LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::CentralElementOutsideCyclic {
                        generator: x,
                        central: z,
                    },
                    format!("central element {z} is not a power of {x}"),
                );
            }
        }
        LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!(
                "center of order {} inside <x> for {} conjugate generator(s)",
                center.order(),
                self.conj_gens.len()
            ),
        )
    }

    /// For every proper subgroup `H` with `n` distinct conjugates, the union of
    /// the conjugates is not all of `G` and has at most `n|H| - (n-1)` elements.
    pub fn check_union_of_conjugates(&self, cap: usize) -> Result<LemmaCheckResult, AnalysisError> {
        let lemma = LemmaId::UnionOfConjugates;
        let g = self.group;
        let subgroups = g.all_subgroups_capped(cap)?;
        let mut checked = 0;
        for h in subgroups.iter().filter(|h| !h.is_whole()) {
            let (conjugates, union_size) = conjugate_union(g, h);
            checked += 1;
            if union_size == g.order() {
                return Ok(LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::UnionCoversGroup {
                        subgroup: h.members().to_vec(),
                    },
                    format!("conjugates of {:?} cover the group", h.members()),
                ));
            }
            if union_size + (conjugates - 1) > conjugates * h.order() {
                return Ok(LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::UnionBoundExceeded {
                        subgroup: h.members().to_vec(),
                        conjugates,
                        union_size,
                    },
                    format!(
                        "union size {union_size} exceeds {}",
                        conjugates * h.order() - (conjugates - 1)
                    ),
                ));
            }
        }
        if checked == 0 {
            return Ok(LemmaCheckResult::vacuous(
                lemma,
                &self.name,
                "the group has no proper subgroup",
            ));
        }
        Ok(LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!("{checked} proper subgroup(s) verified"),
        ))
    }

    /// Almost cyclic exactly when cyclic; both sides decided by separate
    /// exhaustive searches.
    pub fn check_finite_ac_iff_cyclic(&self) -> LemmaCheckResult {
        let lemma = LemmaId::FiniteAlmostCyclicIffCyclic;
        let almost_cyclic = self.is_almost_cyclic();
        let cyclic = self.group.is_cyclic().is_some();
        if almost_cyclic != cyclic {
            return LemmaCheckResult::fail(
                lemma,
                &self.name,
                Counterexample::AlmostCyclicMismatch {
                    almost_cyclic,
                    cyclic,
                },
                format!("almost cyclic = {almost_cyclic}, cyclic = {cyclic}"),
            );
        }
        LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!("almost cyclic = cyclic = {cyclic}"),
        )
    }

    /// `xN` is a conjugate generator of `G/N` for every conjugate generator `x`.
    pub fn check_quotient_conjgen(
        &self,
        n: &Subgroup<'_>,
    ) -> Result<LemmaCheckResult, AnalysisError> {
        self.require_normal(n)?;
        let q = self.group.quotient(n)?;
        Ok(self.quotient_conjgen_in(n, &q))
    }

    fn quotient_conjgen_in(&self, n: &Subgroup<'_>, q: &CosetQuotient) -> LemmaCheckResult {
        let lemma = LemmaId::QuotientConjugateGenerator;
        if self.conj_gens.is_empty() {
            return LemmaCheckResult::vacuous(lemma, &self.name, NO_CONJ_GEN);
        }
        for &x in &self.conj_gens {
            match is_conjugate_generator(&q.group, q.project(x)) {
                Some(cert) => debug_assert!(cert.verify(&q.group)),
                None => {
                    return LemmaCheckResult::fail(
                        lemma,
                        &self.name,
                        Counterexample::ProjectionNotConjugateGenerator {
                            normal: n.members().to_vec(),
                            generator: x,
                        },
                        format!("image of {x} is not a conjugate generator of G/N"),
                    )
                }
            }
        }
        LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!(
                "quotient of order {}: {} projected conjugate generator(s) certified",
                q.group.order(),
                self.conj_gens.len()
            ),
        )
    }

    /// Some conjugate `gHg⁻¹` meets `⟨x⟩` nontrivially. The details string
    /// names the first witness `g`.
    pub fn check_conjugate_intersection(
        &self,
        h: &Subgroup<'_>,
        x: Element,
    ) -> Result<LemmaCheckResult, AnalysisError> {
        let lemma = LemmaId::ConjugateIntersection;
        self.require_conj_gen(x)?;
        if h.is_trivial() {
            return Err(AnalysisError::TrivialSubgroup);
        }
        let g = self.group;
        let cyc = g.cyclic_subgroup(x).mask();
        let witness = g.elements().find_map(|a| {
            h.members()
                .iter()
                .skip(1)
                .map(|&m| g.conjugate(a, m))
                .find(|&c| cyc[c])
                .map(|c| (a, c))
        });
        Ok(match witness {
            Some((a, c)) => LemmaCheckResult::pass(
                lemma,
                &self.name,
                format!("g = {a} gives {c} in gHg^-1 and <{x}>"),
            ),
            None => LemmaCheckResult::fail(
                lemma,
                &self.name,
                Counterexample::NoNontrivialIntersection {
                    subgroup: h.members().to_vec(),
                    generator: x,
                },
                format!("no conjugate of {:?} meets <{x}>", h.members()),
            ),
        })
    }

    /// `N ∩ ⟨x⟩ = ⟨x^m⟩` for the least `m ≥ 1` with `x^m ∈ N`.
    pub fn check_normal_intersection(
        &self,
        n: &Subgroup<'_>,
        x: Element,
    ) -> Result<LemmaCheckResult, AnalysisError> {
        let lemma = LemmaId::NormalIntersection;
        self.require_normal(n)?;
        if n.is_trivial() {
            return Err(AnalysisError::TrivialSubgroup);
        }
        self.require_conj_gen(x)?;
        let g = self.group;
        let m = least_power_in(g, x, &n.mask());
        let cyc = g.cyclic_subgroup(x);
        let inter: Vec<Element> = cyc
            .members()
            .iter()
            .copied()
            .filter(|&a| n.contains(a))
            .collect();
        let generated = g.cyclic_subgroup(g.pow(x, m as i64));
        if m < g.element_order(x) && inter == generated.members() {
            Ok(LemmaCheckResult::pass(
                lemma,
                &self.name,
                format!("m = {m}, N ∩ <x> has order {}", inter.len()),
            ))
        } else {
            Ok(LemmaCheckResult::fail(
                lemma,
                &self.name,
                Counterexample::IntersectionNotGeneratedByLeastPower {
                    normal: n.members().to_vec(),
                    generator: x,
                    least_power: m,
                },
                format!("N ∩ <{x}> = {inter:?} differs from <x^{m}>"),
            ))
        }
    }

    /// A conjugate generator of prime order `p` forces `G` simple of order `p`.
    pub fn check_prime_order_conjgen(&self) -> LemmaCheckResult {
        let lemma = LemmaId::PrimeOrderConjugateGenerator;
        let g = self.group;
        let prime_gen = self
            .conj_gens
            .iter()
            .map(|&x| (x, g.element_order(x)))
            .find(|&(_, p)| is_prime(p));
        let Some((x, p)) = prime_gen else {
            return LemmaCheckResult::vacuous(
                lemma,
                &self.name,
                "no conjugate generator of prime order",
            );
        };
        // a nontrivial proper normal subgroup exists iff some normal closure of
        // a nonidentity element is proper
        if let Some(a) = g
            .elements()
            .skip(1)
            .find(|&a| !g.normal_closure(&[a]).is_whole())
        {
            return LemmaCheckResult::fail(
                lemma,
                &self.name,
                Counterexample::PrimeOrderGroupNotSimple {
                    generator: x,
                    prime: p,
                    normal: g.normal_closure(&[a]).members().to_vec(),
                },
                format!("normal closure of {a} is proper"),
            );
        }
        if g.order() != p {
            return LemmaCheckResult::fail(
                lemma,
                &self.name,
                Counterexample::PrimeOrderGroupTooLarge {
                    generator: x,
                    prime: p,
                    order: g.order(),
                },
                format!("order {} differs from p = {p}", g.order()),
            );
        }
        LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!("conjugate generator {x} of prime order {p}: simple of order {p}"),
        )
    }

    /// With `G/N` cyclic and `N` nontrivial, for each conjugate generator `x`:
    /// some `xᵏ` projects to a generator of `G/N`; `x^m` (least `m` with
    /// `x^m ∈ N`) conjugates every `y ∈ N` to one of its powers by some
    /// `z ∈ N`; and `m` annihilates `G/N`.
    pub fn check_cyclic_quotient_lemmas(
        &self,
        n: &Subgroup<'_>,
    ) -> Result<LemmaCheckResult, AnalysisError> {
        let lemma = LemmaId::CyclicQuotient;
        self.require_normal(n)?;
        if n.is_trivial() {
            return Err(AnalysisError::TrivialSubgroup);
        }
        let g = self.group;
        let q = g.quotient(n)?;
        if q.group.is_cyclic().is_none() {
            return Err(AnalysisError::QuotientNotCyclic);
        }
        if self.conj_gens.is_empty() {
            return Ok(LemmaCheckResult::vacuous(lemma, &self.name, NO_CONJ_GEN));
        }
        let qn = q.group.order();
        let mask = n.mask();
        let mut details = Vec::new();
        for &x in &self.conj_gens {
            let normal = || n.members().to_vec();
            // (i) some power of x projects to a generator
            let xbar = q.project(x);
            let Some(k) = (0..g.element_order(x))
                .find(|&k| q.group.element_order(q.group.pow(xbar, k as i64)) == qn)
            else {
                return Ok(LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::NoPowerGeneratesQuotient {
                        normal: normal(),
                        generator: x,
                    },
                    format!("no power of {x} generates G/N"),
                ));
            };
            // (ii) x^m conjugate generator of N with conjugators in N
            let m = least_power_in(g, x, &mask);
            let xm = g.pow(x, m as i64);
            let log = discrete_logs(g, xm);
            for &y in n.members() {
                let inside = n
                    .members()
                    .iter()
                    .any(|&z| log[g.conjugate(z, y)].is_some());
                if !inside {
                    return Ok(LemmaCheckResult::fail(
                        lemma,
                        &self.name,
                        Counterexample::NotConjugatedInsideNormal {
                            normal: normal(),
                            generator: x,
                            least_power: m,
                            element: y,
                        },
                        format!("{y} is not conjugate inside N to a power of x^{m}"),
                    ));
                }
            }
            // (iii) m is an exponent of G/N
            if let Some(a) = g.elements().find(|&a| !mask[g.pow(a, m as i64)]) {
                return Ok(LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::LeastPowerNotQuotientExponent {
                        normal: normal(),
                        generator: x,
                        least_power: m,
                        element: a,
                    },
                    format!("({a}N)^{m} is not the identity coset"),
                ));
            }
            details.push(format!("x = {x}: k = {k}, m = {m}"));
        }
        Ok(LemmaCheckResult::pass(
            lemma,
            &self.name,
            details.join("; "),
        ))
    }

    /// `y^n = e` for all `y` whenever `x` is a conjugate generator of order `n`.
    pub fn check_exponent_property(&self) -> LemmaCheckResult {
        let lemma = LemmaId::ExponentProperty;
        if self.conj_gens.is_empty() {
            return LemmaCheckResult::vacuous(lemma, &self.name, NO_CONJ_GEN);
        }
        let g = self.group;
        for &x in &self.conj_gens {
            let n = g.element_order(x) as i64;
            if let Some(y) = g.elements().find(|&y| g.pow(y, n) != IDENTITY) {
                return LemmaCheckResult::fail(
                    lemma,
                    &self.name,
                    Counterexample::OrderNotExponent {
                        generator: x,
                        element: y,
                    },
                    format!("{y}^{n} is not the identity"),
                );
            }
        }
        let orders: Vec<usize> = self.conj_gens.iter().map(|&x| g.element_order(x)).collect();
        LemmaCheckResult::pass(
            lemma,
            &self.name,
            format!("exponent(s) {orders:?} verified"),
        )
    }

    /// Every lemma over every applicable instance, one record per lemma, in
    /// [`LemmaId::ALL`] order.
    pub fn run_all(&self, subgroup_cap: usize) -> Result<Vec<LemmaCheckResult>, AnalysisError> {
        let g = self.group;
        let subgroups = g.all_subgroups_capped(subgroup_cap)?;
        let normals: Vec<&Subgroup<'_>> = subgroups.iter().filter(|h| g.is_normal(h)).collect();
        let nontrivial_normals = || normals.iter().copied().filter(|n| !n.is_trivial());

        let quotients = normals
            .iter()
            .map(|n| Ok(self.quotient_conjgen_in(n, &g.quotient(n)?)))
            .collect::<Result<Vec<_>, AnalysisError>>()?;

        let mut intersections = Vec::new();
        for h in subgroups.iter().filter(|h| !h.is_trivial()) {
            for &x in &self.conj_gens {
                intersections.push(self.check_conjugate_intersection(h, x)?);
            }
        }

        let mut normal_inter = Vec::new();
        for n in nontrivial_normals() {
            for &x in &self.conj_gens {
                normal_inter.push(self.check_normal_intersection(n, x)?);
            }
        }

        let mut cyclic_quotients = Vec::new();
        for n in nontrivial_normals() {
            match self.check_cyclic_quotient_lemmas(n) {
                Ok(r) => cyclic_quotients.push(r),
                Err(AnalysisError::QuotientNotCyclic) => {}
                Err(e) => return Err(e),
            }
        }

        let none_gen = if self.conj_gens.is_empty() {
            NO_CONJ_GEN
        } else {
            "the group has no nontrivial subgroup"
        };
        Ok(vec![
            self.check_center_lemma(),
            self.check_union_of_conjugates(subgroup_cap)?,
            self.check_finite_ac_iff_cyclic(),
            LemmaCheckResult::aggregate(
                LemmaId::QuotientConjugateGenerator,
                &self.name,
                quotients,
                NO_CONJ_GEN,
            ),
            LemmaCheckResult::aggregate(
                LemmaId::ConjugateIntersection,
                &self.name,
                intersections,
                none_gen,
            ),
            LemmaCheckResult::aggregate(
                LemmaId::NormalIntersection,
                &self.name,
                normal_inter,
                none_gen,
            ),
            self.check_prime_order_conjgen(),
            LemmaCheckResult::aggregate(
                LemmaId::CyclicQuotient,
                &self.name,
                cyclic_quotients,
                if self.conj_gens.is_empty() {
                    NO_CONJ_GEN
                } else {
                    "no nontrivial normal subgroup with cyclic quotient"
                },
            ),
            self.check_exponent_property(),
        ])
    }
}

/// `(number of distinct conjugates, size of their union)`
pub fn conjugate_union(g: &FiniteGroup, h: &Subgroup<'_>) -> (usize, usize) {
    let conjugates = g.subgroup_conjugates(h);
    let mut covered = vec![false; g.order()];
    for c in &conjugates {
        c.iter().for_each(|&e| covered[e] = true);
    }
    (conjugates.len(), covered.iter().filter(|&&c| c).count())
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s3() -> FiniteGroup {
        catalog::symmetric(3).unwrap()
    }

    #[test]
    fn conjugate_generator_examples() {
        let z6 = catalog::cyclic(6);
        let cert = is_conjugate_generator(&z6, 1).unwrap();
        assert!(cert.verify(&z6));
        assert!(cert.witnesses.iter().all(|w| w.conjugator == 0));
        assert_eq!(cert.witnesses[4].exponent, 4);
        assert!(is_conjugate_generator(&z6, 2).is_none());
        let s = s3();
        let c3 = s.elements().find(|&a| s.element_order(a) == 3).unwrap();
        assert!(is_conjugate_generator(&s, c3).is_none());
    }

    #[test]
    fn conjugate_generator_sets() {
        assert_eq!(conjugate_generators(&catalog::cyclic(6)), vec![1, 5]);
        assert!(conjugate_generators(&catalog::klein()).is_empty());
        assert_eq!(conjugate_generators(&catalog::cyclic(1)), vec![0]);
        assert!(is_almost_cyclic(&catalog::cyclic(6)));
        assert!(!is_almost_cyclic(&s3()));
        assert!(!is_almost_cyclic(&catalog::klein()));
    }

    #[test]
    fn center_lemma_examples() {
        let z6 = catalog::cyclic(6);
        let r = Analysis::new(&z6, "Z6").check_center_lemma();
        assert!(r.passed && !r.vacuous);
        let q8 = catalog::quaternion();
        let r = Analysis::new(&q8, "Q8").check_center_lemma();
        assert!(r.passed && r.vacuous);
    }

    #[test]
    fn union_of_conjugates_examples() {
        let s = s3();
        let h = s.cyclic_subgroup(s.elements().find(|&a| s.element_order(a) == 2).unwrap());
        assert_eq!(conjugate_union(&s, &h), (3, 4));
        let r = Analysis::new(&s, "S3")
            .check_union_of_conjugates(64)
            .unwrap();
        assert!(r.passed && !r.vacuous);
        let z6 = catalog::cyclic(6);
        for h in z6.all_subgroups().unwrap().iter().filter(|h| !h.is_whole()) {
            assert_eq!(conjugate_union(&z6, h), (1, h.order()));
        }
        assert!(matches!(
            Analysis::new(&z6, "Z6").check_union_of_conjugates(4),
            Err(AnalysisError::Group(_))
        ));
        let z1 = catalog::cyclic(1);
        assert!(
            Analysis::new(&z1, "Z1")
                .check_union_of_conjugates(64)
                .unwrap()
                .vacuous
        );
    }

    #[test]
    fn finite_iff_examples() {
        for n in 1..=12 {
            let g = catalog::cyclic(n);
            let a = Analysis::new(&g, format!("Z{n}"));
            assert!(a.is_almost_cyclic());
            assert!(a.check_finite_ac_iff_cyclic().passed);
        }
        for g in [
            s3(),
            catalog::dihedral(4).unwrap(),
            catalog::quaternion(),
            catalog::alternating(4).unwrap(),
        ] {
            let a = Analysis::new(&g, "");
            assert!(!a.is_almost_cyclic());
            assert!(g.is_cyclic().is_none());
            assert!(a.check_finite_ac_iff_cyclic().passed);
        }
    }

    #[test]
    fn quotient_examples() {
        let z6 = catalog::cyclic(6);
        let a = Analysis::new(&z6, "Z6");
        let r = a.check_quotient_conjgen(&z6.cyclic_subgroup(2)).unwrap();
        assert!(r.passed && !r.vacuous);
        let z12 = catalog::cyclic(12);
        let r = Analysis::new(&z12, "Z12")
            .check_quotient_conjgen(&z12.cyclic_subgroup(6))
            .unwrap();
        assert!(r.passed && !r.vacuous);
        let q8 = catalog::quaternion();
        let r = Analysis::new(&q8, "Q8")
            .check_quotient_conjgen(&q8.center())
            .unwrap();
        assert!(r.passed && r.vacuous);
        let s = s3();
        let h = s.cyclic_subgroup(s.elements().find(|&a| s.element_order(a) == 2).unwrap());
        assert!(matches!(
            Analysis::new(&s, "S3").check_quotient_conjgen(&h),
            Err(AnalysisError::Group(
                crate::error::GroupError::NotNormal { .. }
            ))
        ));
    }

    #[test]
    fn conjugate_intersection_examples() {
        let z6 = catalog::cyclic(6);
        let a = Analysis::new(&z6, "Z6");
        let r = a
            .check_conjugate_intersection(&z6.cyclic_subgroup(3), 1)
            .unwrap();
        assert!(r.passed);
        assert!(r.details.starts_with("g = 0"));
        let z12 = catalog::cyclic(12);
        let a12 = Analysis::new(&z12, "Z12");
        assert!(
            a12.check_conjugate_intersection(&z12.cyclic_subgroup(3), 1)
                .unwrap()
                .passed
        );
        for h in z12.all_subgroups().unwrap().iter().skip(1) {
            let r = a12.check_conjugate_intersection(h, 5).unwrap();
            assert!(r.details.starts_with("g = 0"));
        }
        assert_eq!(
            a.check_conjugate_intersection(&z6.cyclic_subgroup(3), 2),
            Err(AnalysisError::NotConjugateGenerator(2))
        );
        assert_eq!(
            a.check_conjugate_intersection(&z6.trivial_subgroup(), 1),
            Err(AnalysisError::TrivialSubgroup)
        );
    }

    #[test]
    fn normal_intersection_examples() {
        let z6 = catalog::cyclic(6);
        let a = Analysis::new(&z6, "Z6");
        let r = a
            .check_normal_intersection(&z6.cyclic_subgroup(3), 1)
            .unwrap();
        assert!(r.passed && r.details.starts_with("m = 3"));
        let r = a
            .check_normal_intersection(&z6.cyclic_subgroup(2), 1)
            .unwrap();
        assert!(r.passed && r.details.starts_with("m = 2"));
        let z12 = catalog::cyclic(12);
        let r = Analysis::new(&z12, "Z12")
            .check_normal_intersection(&z12.cyclic_subgroup(4), 1)
            .unwrap();
        assert!(r.passed && r.details.starts_with("m = 4"));
        assert_eq!(
            a.check_normal_intersection(&z6.trivial_subgroup(), 1),
            Err(AnalysisError::TrivialSubgroup)
        );
    }

    #[test]
    fn prime_order_examples() {
        let z5 = catalog::cyclic(5);
        let r = Analysis::new(&z5, "Z5").check_prime_order_conjgen();
        assert!(r.passed && !r.vacuous);
        let z6 = catalog::cyclic(6);
        let r = Analysis::new(&z6, "Z6").check_prime_order_conjgen();
        assert!(r.passed && r.vacuous);
    }

    #[test]
    fn cyclic_quotient_examples() {
        let z6 = catalog::cyclic(6);
        let r = Analysis::new(&z6, "Z6")
            .check_cyclic_quotient_lemmas(&z6.cyclic_subgroup(2))
            .unwrap();
        assert!(r.passed);
        assert!(r.details.contains("x = 1: k = 1, m = 2"));
        let z12 = catalog::cyclic(12);
        let r = Analysis::new(&z12, "Z12")
            .check_cyclic_quotient_lemmas(&z12.cyclic_subgroup(3))
            .unwrap();
        assert!(r.passed);
        assert!(r.details.contains("x = 1: k = 1, m = 3"));
        let z2 = catalog::cyclic(2);
        assert_eq!(
            Analysis::new(&z2, "Z2").check_cyclic_quotient_lemmas(&z2.trivial_subgroup()),
            Err(AnalysisError::TrivialSubgroup)
        );
        // Z2 x Z4 modulo a Z2 factor can be non-cyclic
        let k = catalog::klein();
        let n = k.cyclic_subgroup(1);
        let q = k.quotient(&n).unwrap();
        assert!(q.group.is_cyclic().is_some());
        let r = Analysis::new(&k, "Z2xZ2")
            .check_cyclic_quotient_lemmas(&n)
            .unwrap();
        assert!(r.vacuous);
        let q8 = catalog::quaternion();
        assert_eq!(
            Analysis::new(&q8, "Q8").check_cyclic_quotient_lemmas(&q8.center()),
            Err(AnalysisError::QuotientNotCyclic)
        );
    }

    #[test]
    fn exponent_examples() {
        for n in [6, 8] {
            let g = catalog::cyclic(n);
            let r = Analysis::new(&g, "").check_exponent_property();
            assert!(r.passed && !r.vacuous);
            assert!(r.details.contains(&n.to_string()));
        }
    }

    #[test]
    fn counterexamples_replay_against_the_table() {
        let s = s3();
        // the whole group's conjugates cover it, but it is not proper
        assert!(!Counterexample::UnionCoversGroup {
            subgroup: s.elements().collect()
        }
        .confirms(&s));
        let h = s.cyclic_subgroup(s.elements().find(|&a| s.element_order(a) == 2).unwrap());
        assert!(!Counterexample::UnionCoversGroup {
            subgroup: h.members().to_vec()
        }
        .confirms(&s));
        // a false mismatch claim is rejected, a true "mismatch" is impossible
        assert!(!Counterexample::AlmostCyclicMismatch {
            almost_cyclic: false,
            cyclic: true
        }
        .confirms(&s));
        // Z6: claim that 3 (central) is outside <1> is rejected
        let z6 = catalog::cyclic(6);
        assert!(!Counterexample::CentralElementOutsideCyclic {
            generator: 1,
            central: 3
        }
        .confirms(&z6));
        assert!(!Counterexample::OrderNotExponent {
            generator: 1,
            element: 2
        }
        .confirms(&z6));
        // the union bound counterexample must match the real counts
        assert!(!Counterexample::UnionBoundExceeded {
            subgroup: h.members().to_vec(),
            conjugates: 3,
            union_size: 4
        }
        .confirms(&s));
    }

    #[test]
    fn run_all_reports_one_record_per_lemma() {
        let g = catalog::cyclic(12);
        let results = Analysis::new(&g, "Z12").run_all(64).unwrap();
        let ids: Vec<LemmaId> = results.iter().map(|r| r.lemma).collect();
        assert_eq!(ids, LemmaId::ALL.to_vec());
        assert!(results.iter().all(|r| r.passed));
        let q8 = catalog::quaternion();
        let results = Analysis::new(&q8, "Q8").run_all(64).unwrap();
        assert!(results.iter().all(|r| r.passed));
        assert!(results.iter().filter(|r| r.vacuous).count() >= 5);
    }
}
