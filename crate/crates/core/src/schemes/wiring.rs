// Copyright 2026 The pagt Authors
// SPDX-License-Identifier: Apache-2.0

//! Edge-level description of a scheme and the teleportation flow it induces.
//!
//! Every gate Hamiltonian `H_W(i, j)` is an edge with a twist `W` on `j`.
//! The logical qubit enters on the input qubit, hops along a final edge, then
//! along an initial edge, and so on until it reaches a qubit that no final
//! edge touches. Each hop contributes a 2x2 factor to the implemented gate:
//!
//! | edge    | twist on far end | twist on near end |
//! |---------|------------------|-------------------|
//! | initial | `W`              | `Wᵀ`              |
//! | final   | `W*`             | `W†`              |

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::Weight;
use crate::gate::{gate_hamiltonian, mes_state};
use crate::operator::OperatorSum;
use crate::state::{Fragment, StateVector};
use crate::unitary::SingleQubitUnitary;

/// Label convention: data qubits are one-based; an optional control `C`
/// sits at index 0. Without a control, label `k` is index `k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Register {
    pub n_data: usize,
    pub controlled: bool,
}

impl Register {
    pub fn plain(n_data: usize) -> Self {
        Self { n_data, controlled: false }
    }

    pub fn with_control(n_data: usize) -> Self {
        Self { n_data, controlled: true }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_data + usize::from(self.controlled)
    }

    /// Register index of data label `label` (1-based).
    pub fn index(&self, label: usize) -> Result<usize> {
        if label == 0 || label > self.n_data {
            return Err(Error::QubitOutOfRange { index: label, n_qubits: self.n_data });
        }
        Ok(if self.controlled { label } else { label - 1 })
    }

    pub fn control(&self) -> Option<usize> {
        self.controlled.then_some(0)
    }
}

/// `H_W(i, j)`, optionally restricted to a control branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    /// Twist, acting on `j`.
    pub twist: SingleQubitUnitary,
    pub control: Option<u8>,
    /// Schedule component driving this edge.
    pub component: String,
}

impl Edge {
    pub fn new(i: usize, j: usize, twist: SingleQubitUnitary) -> Self {
        Self { i, j, twist, control: None, component: "s".into() }
    }

    pub fn plain(i: usize, j: usize) -> Self {
        Self::new(i, j, SingleQubitUnitary::identity())
    }

    pub fn when(mut self, value: u8) -> Self {
        self.control = Some(value);
        self
    }

    pub fn driven_by(mut self, component: &str) -> Self {
        self.component = component.to_string();
        self
    }

    fn touches(&self, q: usize) -> bool {
        self.i == q || self.j == q
    }

    fn other(&self, q: usize) -> usize {
        if self.i == q { self.j } else { self.i }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.i.min(self.j), self.i.max(self.j))
    }

    /// `W_j |I>>_{ij}` as a register fragment.
    pub fn ground_fragment(&self, register: &Register) -> Result<Fragment> {
        let (qi, qj) = (register.index(self.i)?, register.index(self.j)?);
        let mes = mes_state(qi, qj)?;
        let state = mes.state.apply_local_unitary(&self.twist, 1)?;
        Ok(Fragment { qubits: mes.qubits, state })
    }

    fn operator(&self, register: &Register, omega: f64) -> Result<OperatorSum> {
        let h = gate_hamiltonian(
            &self.twist,
            register.index(self.i)?,
            register.index(self.j)?,
            omega,
            register.n_qubits(),
        )?;
        match (self.control, register.control()) {
            (None, _) => Ok(h),
            (Some(v), Some(c)) => h.controlled(c, v),
            (Some(_), None) => Err(Error::InvalidInput("controlled edge without a control qubit".into())),
        }
    }
}

/// A full scheme: register, input qubit, initial and final edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Wiring {
    pub register: Register,
    pub input: usize,
    pub ini: Vec<Edge>,
    pub fin: Vec<Edge>,
}

/// Where the logical qubit ends up in one control branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    pub gate: SingleQubitUnitary,
    pub output: usize,
    /// Labels visited, input first.
    pub path: Vec<usize>,
    /// Final edges of this branch.
    pub fin: Vec<Edge>,
    /// Initial edges no final edge touches; they keep their ground state.
    pub idle: Vec<Edge>,
}

impl Flow {
    /// Whether the path visits all `n_data` qubits.
    pub fn spans(&self, n_data: usize) -> bool {
        self.path.len() == n_data
    }

    /// Unordered pairs holding two-qubit states at the end of the run.
    pub fn pair_set(&self) -> BTreeSet<(usize, usize)> {
        self.fin.iter().chain(&self.idle).map(Edge::pair).collect()
    }

    /// Final state on the data register for logical input `phi`.
    pub fn final_state(&self, register: &Register, phi: &StateVector) -> Result<StateVector> {
        let data = Register::plain(register.n_data);
        let mut fragments: Vec<Fragment> =
            self.fin.iter().chain(&self.idle).map(|e| e.ground_fragment(&data)).collect::<Result<_>>()?;
        let out = apply_2x2(&self.gate, phi)?;
        fragments.push(Fragment { qubits: vec![data.index(self.output)?], state: out });
        StateVector::from_fragments(data.n_data, &fragments)
    }
}

fn apply_2x2(u: &SingleQubitUnitary, phi: &StateVector) -> Result<StateVector> {
    if phi.n_qubits() != 1 {
        return Err(Error::QubitCountMismatch { left: 1, right: phi.n_qubits() });
    }
    phi.apply_local_unitary(u, 0)
}

impl Wiring {
    /// Final edges active in `branch` (`None` for uncontrolled schemes).
    pub fn fin_edges(&self, branch: Option<u8>) -> Vec<Edge> {
        self.fin
            .iter()
            .filter(|e| e.control.is_none() || e.control == branch)
            .cloned()
            .collect()
    }

    /// Hamiltonian terms grouped by schedule weight.
    pub fn terms(&self, omega: f64) -> Result<Vec<(OperatorSum, Weight)>> {
        let mut grouped: Vec<(OperatorSum, Weight)> = Vec::new();
        let tagged = self
            .ini
            .iter()
            .map(|e| (e, Weight::Falling(e.component.clone())))
            .chain(self.fin.iter().map(|e| (e, Weight::Rising(e.component.clone()))));
        for (edge, weight) in tagged {
            let h = edge.operator(&self.register, omega)?;
            match grouped.iter_mut().find(|(_, w)| *w == weight) {
                Some((acc, _)) => *acc = &*acc + &h,
                None => grouped.push((h, weight)),
            }
        }
        Ok(grouped)
    }

    /// `(H_ini, H_fin)` with every component on one schedule.
    pub fn hamiltonians(&self, omega: f64) -> Result<(OperatorSum, OperatorSum)> {
        let n = self.register.n_qubits();
        let mut ini = OperatorSum::zero(n)?;
        let mut fin = OperatorSum::zero(n)?;
        for e in &self.ini {
            ini = &ini + &e.operator(&self.register, omega)?;
        }
        for e in &self.fin {
            fin = &fin + &e.operator(&self.register, omega)?;
        }
        Ok((ini, fin))
    }

    /// Initial data-register state: `phi` on the input, edge ground states
    /// elsewhere.
    pub fn initial_data_state(&self, phi: &StateVector) -> Result<StateVector> {
        let data = Register::plain(self.register.n_data);
        let mut fragments: Vec<Fragment> =
            self.ini.iter().map(|e| e.ground_fragment(&data)).collect::<Result<_>>()?;
        fragments.push(Fragment { qubits: vec![data.index(self.input)?], state: phi.clone() });
        StateVector::from_fragments(data.n_data, &fragments)
    }

    /// Follows the logical qubit through one branch.
    pub fn trace(&self, branch: Option<u8>) -> Result<Flow> {
        let fin = self.fin_edges(branch);
        let find = |edges: &[Edge], q: usize| -> Result<Option<Edge>> {
            let hits: Vec<&Edge> = edges.iter().filter(|e| e.touches(q)).collect();
            match hits.len() {
                0 => Ok(None),
                1 => Ok(Some(hits[0].clone())),
                _ => Err(Error::InvalidPairing(format!("qubit {q} sits on several edges"))),
            }
        };
        let mut gate = SingleQubitUnitary::identity();
        let mut pos = self.input;
        let mut path = vec![pos];
        if find(&self.ini, pos)?.is_some() {
            return Err(Error::InvalidPairing(format!("input qubit {pos} is on an initial edge")));
        }
        while let Some(f) = find(&fin, pos)? {
            let far = f.other(pos);
            let factor = if f.j == far { f.twist.conjugate() } else { f.twist.adjoint() };
            gate = factor * gate;
            pos = far;
            let Some(e) = find(&self.ini, pos)? else {
                return Err(Error::InvalidPairing(format!(
                    "qubit {pos} is reached by a final edge but starts on no initial edge"
                )));
            };
            let far = e.other(pos);
            let factor = if e.j == far { e.twist } else { e.twist.transpose() };
            gate = factor * gate;
            if path.contains(&far) {
                return Err(Error::InvalidPairing(format!("flow revisits qubit {far}")));
            }
            path.push(pos);
            path.push(far);
            pos = far;
            if path.len() > 2 * self.register.n_data + 2 {
                return Err(Error::InvalidPairing("flow does not terminate".into()));
            }
        }
        let output = pos;
        let idle: Vec<Edge> = self
            .ini
            .iter()
            .filter(|e| !fin.iter().any(|f| f.touches(e.i) || f.touches(e.j)))
            .cloned()
            .collect();
        // every data qubit must end in exactly one place
        let mut covered = vec![0usize; self.register.n_data + 1];
        for e in fin.iter().chain(&idle) {
            covered[e.i] += 1;
            covered[e.j] += 1;
        }
        covered[output] += 1;
        if covered[1..].iter().any(|&c| c != 1) {
            return Err(Error::InvalidPairing(format!(
                "final edges and output do not partition the register (coverage {:?})",
                &covered[1..]
            )));
        }
        Ok(Flow { gate, output, path, fin, idle })
    }
}

/// Swaps (data labels) that carry branch `from` onto the layout of branch
/// `to`: the output lands on `to.output` and pairs land on pairs. Among all
/// qualifying permutations the one with fewest transpositions wins, then
/// one made of disjoint swaps, then the lexicographically smallest list.
pub fn relocation_swaps(n_data: usize, from: &Flow, to: &Flow) -> Option<Vec<(usize, usize)>> {
    let target_pairs = to.pair_set();
    let labels: Vec<usize> = (1..=n_data).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for perm in permutations(&labels) {
        // perm[k] is where the content of label k + 1 moves
        let pi = |q: usize| perm[q - 1];
        if pi(from.output) != to.output {
            continue;
        }
        let moved: BTreeSet<(usize, usize)> = from
            .pair_set()
            .iter()
            .map(|&(a, b)| (pi(a).min(pi(b)), pi(a).max(pi(b))))
            .collect();
        if moved != target_pairs {
            continue;
        }
        let swaps = cycle_swaps(&perm);
        let key = |s: &Vec<(usize, usize)>| (s.len(), !is_disjoint(s), s.clone());
        let better = match &best {
            None => true,
            Some(b) => key(&swaps) < key(b),
        };
        if better {
            best = Some(swaps);
        }
    }
    best
}

fn is_disjoint(swaps: &[(usize, usize)]) -> bool {
    let mut seen = BTreeSet::new();
    swaps.iter().all(|&(a, b)| seen.insert(a) && seen.insert(b))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Transpositions realizing `perm`: a cycle `c0 -> c1 -> ... -> c_{k-1}`
/// becomes swaps `(c0, c1), (c0, c2), ...`.
fn cycle_swaps(perm: &[usize]) -> Vec<(usize, usize)> {
    let n = perm.len();
    let mut seen = vec![false; n + 1];
    let mut swaps = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut q = perm[start - 1];
        while q != start {
            cycle.push(q);
            seen[q] = true;
            q = perm[q - 1];
        }
        for &c in &cycle[1..] {
            swaps.push((cycle[0].min(c), cycle[0].max(c)));
        }
    }
    swaps
}

/// `Σ_b c_b |b>_C ⊗ state_b` for a control at index 0.
pub fn controlled_superposition(
    c0: Complex64,
    state0: &StateVector,
    c1: Complex64,
    state1: &StateVector,
) -> Result<StateVector> {
    if state0.n_qubits() != state1.n_qubits() {
        return Err(Error::QubitCountMismatch { left: state0.n_qubits(), right: state1.n_qubits() });
    }
    let mut amps: Vec<Complex64> = state0.amplitudes().iter().map(|a| a * c0).collect();
    amps.extend(state1.amplitudes().iter().map(|a| a * c1));
    StateVector::normalized(state0.n_qubits() + 1, amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at_wiring(ini_twist: SingleQubitUnitary, fin: Edge) -> Wiring {
        Wiring {
            register: Register::plain(3),
            input: 1,
            ini: vec![Edge::new(2, 3, ini_twist)],
            fin: vec![fin],
        }
    }

    #[test]
    fn teleportation_variants_follow_the_twist_table() {
        let u = SingleQubitUnitary::from_name("Ry(0.4)").unwrap() * SingleQubitUnitary::phase_t();
        let id = SingleQubitUnitary::identity();
        let cases = [
            (at_wiring(u, Edge::plain(1, 2)), u, 3),
            (at_wiring(u, Edge::plain(1, 3)), u.transpose(), 2),
            (at_wiring(id, Edge::new(1, 2, u)), u.conjugate(), 3),
            (at_wiring(id, Edge::new(2, 1, u)), u.adjoint(), 3),
        ];
        for (w, gate, out) in cases {
            let flow = w.trace(None).unwrap();
            assert_eq!(flow.output, out);
            assert!(flow.gate.distance(&gate) < 1e-12);
        }
    }

    #[test]
    fn switch_branches_and_relocation() {
        let w = Wiring {
            register: Register::with_control(5),
            input: 1,
            ini: vec![Edge::plain(2, 3), Edge::plain(4, 5)],
            fin: vec![
                Edge::plain(1, 2).when(0),
                Edge::plain(3, 4).when(0),
                Edge::plain(1, 4).when(1),
                Edge::plain(2, 5).when(1),
            ],
        };
        let b0 = w.trace(Some(0)).unwrap();
        let b1 = w.trace(Some(1)).unwrap();
        assert_eq!((b0.output, b1.output), (5, 3));
        assert_eq!(relocation_swaps(5, &b1, &b0).unwrap(), vec![(2, 4), (3, 5)]);
    }

    #[test]
    fn closed_loops_stay_off_the_path() {
        let w = Wiring {
            register: Register::plain(5),
            input: 1,
            ini: vec![Edge::plain(2, 3), Edge::plain(4, 5)],
            fin: vec![Edge::plain(1, 2), Edge::plain(4, 5)],
        };
        let flow = w.trace(None).unwrap();
        assert_eq!(flow.output, 3);
        assert_eq!(flow.path, vec![1, 2, 3]);
        assert!(!flow.spans(5));
        let w = Wiring { fin: vec![Edge::plain(1, 2), Edge::plain(4, 4)], ..w };
        assert!(w.trace(None).is_err());
    }

    #[test]
    fn cycle_swaps_realize_the_permutation() {
        // 1 -> 2 -> 3 -> 1
        assert_eq!(cycle_swaps(&[2, 3, 1]), vec![(1, 2), (1, 3)]);
        assert!(cycle_swaps(&[1, 2, 3]).is_empty());
    }

    #[test]
    fn register_labels() {
        assert_eq!(Register::plain(3).index(1).unwrap(), 0);
        assert_eq!(Register::with_control(5).index(1).unwrap(), 1);
        assert!(Register::plain(3).index(4).is_err());
    }
}
