//! The canonical submodule attached to a map: outer part plus the span
//! of its vertex relations.
//!
//! The fiber classes of a map generate a free module. Inside it sits a
//! canonical submodule, the direct sum of an outer part (all classes
//! never appearing as a fiber) and an effective part (the span of the
//! vertex relations of the Reeb graph). Since "all classes" is an
//! infinite family, callers pass a finite universe standing in for it;
//! the quotient presentation never depends on that choice because outer
//! classes die in the quotient anyway.

use std::collections::BTreeSet;

use crate::exactlin::{cokernel_presentation, CoefficientRing, Element, Presentation};
use crate::reeb::ReebGraph;
use crate::symbols::ManifoldClass;
use crate::{Error, Result};

/// Outer and effective part of the canonical submodule of one map.
#[derive(Clone, Debug, PartialEq)]
pub struct CcData {
    /// Distinct edge labels, sorted.
    pub fiber_labels: Vec<ManifoldClass>,
    /// Nonzero vertex relations, paired with their vertex, in vertex
    /// order.
    pub effective: Vec<(String, Element)>,
    /// The finite stand-in for "all manifold classes", when one was
    /// chosen.
    pub outer_universe: Option<Vec<ManifoldClass>>,
    /// Universe classes that never appear as a fiber.
    pub outer_generators: Vec<ManifoldClass>,
    /// Whether the oriented variant of the module was requested.
    pub oriented: bool,
    /// Result of [`direct_sum_check`] on this data.
    pub direct_sum_ok: bool,
}

impl CcData {
    pub fn effective_elements(&self) -> Vec<&Element> {
        self.effective.iter().map(|(_, e)| e).collect()
    }

    pub fn outer_description(&self) -> String {
        match &self.outer_universe {
            Some(_) => {
                let names: Vec<String> = self
                    .outer_generators
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                format!("free on {{{}}}", names.join(", "))
            }
            None => "complement of fiber labels in all classes".to_string(),
        }
    }
}

/// True when the outer and effective parts really are independent:
/// every effective generator is supported on fiber labels only and no
/// outer generator is a fiber label.
pub fn direct_sum_check(d: &CcData) -> bool {
    let fibers: BTreeSet<&ManifoldClass> = d.fiber_labels.iter().collect();
    d.effective
        .iter()
        .all(|(_, e)| e.support().all(|c| fibers.contains(c)))
        && d.outer_generators.iter().all(|c| !fibers.contains(c))
}

/// Computes the canonical submodule data of a validated graph. With
/// `oriented` set, every atom in scope (fiber labels and the universe)
/// must be oriented.
pub fn cc(g: &ReebGraph, universe: Option<&[ManifoldClass]>, oriented: bool) -> Result<CcData> {
    g.require_valid()?;
    let fiber_labels: Vec<ManifoldClass> = g.fiber_labels().into_iter().collect();
    let mut in_scope: BTreeSet<ManifoldClass> = fiber_labels.iter().cloned().collect();

    let outer_universe = match universe {
        None => None,
        Some(u) => {
            let u: BTreeSet<ManifoldClass> = u.iter().cloned().collect();
            for c in &u {
                for name in c.factors() {
                    if g.symbols().atom(name).is_none() {
                        return Err(Error::UnknownAtom(name.clone()));
                    }
                }
            }
            for label in &fiber_labels {
                if !u.contains(label) {
                    return Err(Error::UniverseMissingLabel(label.to_string()));
                }
            }
            let expected = g
                .fiber_dimension()
                .or_else(|| u.iter().next().map(|c| g.symbols().dimension(c)));
            for c in &u {
                let dim = g.symbols().dimension(c);
                if Some(dim) != expected {
                    return Err(Error::UniverseDimensionMismatch {
                        class: c.to_string(),
                        dim,
                        expected: expected.unwrap_or(0),
                    });
                }
            }
            in_scope.extend(u.iter().cloned());
            Some(u.into_iter().collect::<Vec<_>>())
        }
    };

    if oriented {
        for c in &in_scope {
            for name in c.factors() {
                let atom = g.symbols().atom(name).unwrap();
                if !atom.oriented {
                    return Err(Error::MixedOrientation(name.clone()));
                }
            }
        }
    }

    let effective: Vec<(String, Element)> = g
        .vertex_relations()
        .into_iter()
        .filter(|(_, e)| !e.is_zero())
        .collect();

    let outer_generators: Vec<ManifoldClass> = match &outer_universe {
        None => Vec::new(),
        Some(u) => {
            let fibers: BTreeSet<&ManifoldClass> = fiber_labels.iter().collect();
            u.iter().filter(|c| !fibers.contains(c)).cloned().collect()
        }
    };

    let mut data = CcData {
        fiber_labels,
        effective,
        outer_universe,
        outer_generators,
        oriented,
        direct_sum_ok: true,
    };
    data.direct_sum_ok = direct_sum_check(&data);
    Ok(data)
}

/// Quotient of the free module on the fiber labels by the effective
/// part. This is the whole quotient by the canonical submodule
/// restricted to classes that can survive, since outer classes are in
/// the submodule by definition.
pub fn quotient(g: &ReebGraph, ring: CoefficientRing) -> Result<Presentation> {
    g.require_valid()?;
    let basis: Vec<ManifoldClass> = g.fiber_labels().into_iter().collect();
    let relations: Vec<Element> = g
        .vertex_relations()
        .into_iter()
        .map(|(_, e)| e)
        .filter(|e| !e.is_zero())
        .collect();
    cokernel_presentation(&relations, &basis, ring)
}
