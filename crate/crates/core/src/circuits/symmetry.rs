//! Orbits of circuits under factor and level relabellings.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::circuits::{Circuit, CircuitBasis};
use crate::design::CandidateSet;
use crate::error::{Error, Result};

/// A permutation group on point indices, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    points: usize,
    generators: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// The group with no generators.
    pub fn trivial(points: usize) -> Self {
        SymmetryGroup {
            points,
            generators: Vec::new(),
        }
    }

    /// Checks that each generator is a permutation of `0..points`.
    pub fn from_generators(points: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for g in &generators {
            let mut seen = vec![false; points];
            if g.len() != points {
                return Err(Error::InvalidInput(format!(
                    "generator of length {} on {points} points",
                    g.len()
                )));
            }
            for &i in g {
                if i >= points || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidInput("generator is not a permutation".into()));
                }
            }
        }
        Ok(SymmetryGroup { points, generators })
    }

    /// Level permutations within each factor (a transposition and a full
    /// cycle per factor) and transpositions of consecutive factors with
    /// equal level counts. Fails when some generator moves a point outside
    /// the candidate set.
    pub fn for_candidate_set(cs: &CandidateSet) -> Result<Self> {
        let levels = cs.factors().levels();
        let m = levels.len();
        let mut point_maps: Vec<Box<dyn Fn(&[usize]) -> Vec<usize>>> = Vec::new();
        for f in 0..m {
            let s = levels[f];
            point_maps.push(Box::new(move |p: &[usize]| {
                let mut q = p.to_vec();
                q[f] = match p[f] {
                    0 => 1,
                    1 => 0,
                    l => l,
                };
                q
            }));
            if s > 2 {
                point_maps.push(Box::new(move |p: &[usize]| {
                    let mut q = p.to_vec();
                    q[f] = (p[f] + 1) % s;
                    q
                }));
            }
        }
        for f in 0..m {
            if let Some(g) = (f + 1..m).find(|&g| levels[g] == levels[f]) {
                point_maps.push(Box::new(move |p: &[usize]| {
                    let mut q = p.to_vec();
                    q.swap(f, g);
                    q
                }));
            }
        }
        let generators = point_maps
            .iter()
            .map(|map| {
                cs.points()
                    .iter()
                    .map(|p| {
                        let q = map(p);
                        cs.index_of(&q).ok_or_else(|| {
                            Error::InvalidInput(format!(
                                "relabelling maps point {p:?} to {q:?}, outside the candidate set"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetryGroup::from_generators(cs.len(), generators)
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn num_points(&self) -> usize {
        self.points
    }
}

/// Image of a circuit under a point permutation, re-canonicalized.
pub fn permute_circuit(c: &Circuit, perm: &[usize]) -> Result<Circuit> {
    Circuit::from_sparse(
        c.len(),
        c.support()
            .iter()
            .zip(c.coeffs())
            .map(|(&i, v)| (perm[i], v.clone()))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub size: usize,
    pub support_size: usize,
    /// First member in basis order.
    pub representative: Circuit,
    /// Basis indices of all members, ascending.
    pub members: Vec<usize>,
}

/// Splits the basis into orbits; ordered by representative.
pub fn classify_circuits(basis: &CircuitBasis, group: &SymmetryGroup) -> Result<Vec<OrbitSummary>> {
    if group.num_points() != basis.num_points() {
        return Err(Error::Dimension(format!(
            "group acts on {} points, basis has {}",
            group.num_points(),
            basis.num_points()
        )));
    }
    let circuits = basis.circuits();
    let index: HashMap<&Circuit, usize> = circuits.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut orbit_of = vec![usize::MAX; circuits.len()];
    let mut orbits = Vec::new();
    for start in 0..circuits.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in group.generators() {
                let image = permute_circuit(&circuits[i], g)?;
                let j = *index.get(&image).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "image of circuit {i} is not in the basis; the group does not preserve the model"
                    ))
                })?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(OrbitSummary {
            size: members.len(),
            support_size: circuits[start].support_size(),
            representative: circuits[start].clone(),
            members,
        });
    }
    Ok(orbits)
}

/// Groups circuits that coincide after some permutation of the points and
/// a change of sign, i.e. by the multiset of nonzero entries.
pub fn classify_by_entry_pattern(basis: &CircuitBasis) -> Vec<OrbitSummary> {
    let mut classes: Vec<(Vec<BigInt>, Vec<usize>)> = Vec::new();
    let mut by_key: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for (i, c) in basis.circuits().iter().enumerate() {
        let key = entry_pattern(c);
        let slot = *by_key.entry(key.clone()).or_insert_with(|| {
            classes.push((key, Vec::new()));
            classes.len() - 1
        });
        classes[slot].1.push(i);
    }
    classes
        .into_iter()
        .map(|(_, members)| {
            let rep = &basis.circuits()[members[0]];
            OrbitSummary {
                size: members.len(),
                support_size: rep.support_size(),
                representative: rep.clone(),
                members,
            }
        })
        .collect()
}

/// Sorted nonzero entries, negated if that sorts lower.
pub fn entry_pattern(c: &Circuit) -> Vec<BigInt> {
    let mut v = c.coeffs().to_vec();
    v.sort();
    let mut w: Vec<BigInt> = c.coeffs().iter().map(|x| -x).collect();
    w.sort();
    v.min(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{circuits_of_model, compute_circuits};
    use crate::design::{build_full_factorial, catalog::catalog, model_matrix, Coding, FactorSpec, ModelSpec};
    use crate::linalg::IntMatrix;

    #[test]
    fn trivial_group_gives_singletons() {
        let a = IntMatrix::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]]);
        let b = compute_circuits(&a, None, &Default::default()).unwrap();
        let orbits = classify_circuits(&b, &SymmetryGroup::trivial(5)).unwrap();
        assert_eq!(orbits.len(), b.len());
        assert!(orbits.iter().all(|o| o.size == 1));
    }

    #[test]
    fn full_factorial_generators_are_permutations() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 3, 3]).unwrap()).unwrap();
        let g = SymmetryGroup::for_candidate_set(&cs).unwrap();
        // swap + cycle for the two 3-level factors, swap for the 2-level one,
        // one factor transposition.
        assert_eq!(g.generators().len(), 6);
    }

    #[test]
    fn non_closed_candidate_set_is_refused() {
        assert!(SymmetryGroup::for_candidate_set(&catalog("bibd_4x6").unwrap()).is_err());
        assert!(SymmetryGroup::from_generators(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn two_by_two_by_two_main_effects_orbits() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let b = circuits_of_model(&mm, None, &Default::default()).unwrap();
        let orbits = classify_circuits(&b, &SymmetryGroup::for_candidate_set(&cs).unwrap()).unwrap();
        assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), b.len());
        for o in &orbits {
            assert!(o.members.iter().all(|&i| b.circuits()[i].support_size() == o.support_size));
        }
        // Entry-pattern classes are unions of orbits.
        let patterns = classify_by_entry_pattern(&b);
        assert!(patterns.len() <= orbits.len());
        for o in &orbits {
            let key = entry_pattern(&o.representative);
            assert!(o.members.iter().all(|&i| entry_pattern(&b.circuits()[i]) == key));
        }
    }
}
