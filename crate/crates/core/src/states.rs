//! Single-excitation collective states with ±1 site amplitudes.

use std::fmt;

use crate::error::{Error, Result};

/// Largest chain length [`enumerate_sign_states`] will expand.
pub const MAX_ENUMERATED_SITES: usize = 20;

/// A collective state `(1/√N) Σ_i C_i |g…e_i…g⟩` with every `C_i ∈ {+1, −1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignState {
    coeffs: Vec<i8>,
}

impl SignState {
    pub fn new(coeffs: Vec<i8>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::State("a state needs at least one site".into()));
        }
        if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, &c)| c != 1 && c != -1) {
            return Err(Error::State(format!("coefficient {c} at site {} is not ±1", i + 1)));
        }
        Ok(Self { coeffs })
    }

    /// All coefficients `+1`.
    pub fn symmetric(n: usize) -> Result<Self> {
        check_sites(n)?;
        Ok(Self { coeffs: vec![1; n] })
    }

    /// `C_k = (−1)^(k+1)`, starting with `+1` on the first site.
    pub fn alternating(n: usize) -> Result<Self> {
        check_sites(n)?;
        Ok(Self {
            coeffs: (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect(),
        })
    }

    /// Parses `sym`, `alt`, or an explicit pattern such as `+-++-` whose
    /// length must equal `n`.
    pub fn parse(token: &str, n: usize) -> Result<Self> {
        match token.trim() {
            "sym" | "symmetric" => Self::symmetric(n),
            "alt" | "anti" | "antisymmetric" | "alternating" => Self::alternating(n),
            pattern => {
                let coeffs = pattern
                    .chars()
                    .map(|ch| match ch {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        other => Err(Error::State(format!(
                            "invalid character {other:?} in state pattern {pattern:?}"
                        ))),
                    })
                    .collect::<Result<Vec<i8>>>()?;
                if coeffs.len() != n {
                    return Err(Error::State(format!(
                        "state pattern {pattern:?} has {} sites but the chain has {n}",
                        coeffs.len()
                    )));
                }
                Self::new(coeffs)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    /// Amplitude normalization `1/√N`.
    pub fn norm_factor(&self) -> f64 {
        1.0 / (self.len() as f64).sqrt()
    }

    /// `Σ_i C_i²`, which equals N for every valid state.
    pub fn weight(&self) -> i64 {
        self.coeffs.iter().map(|&c| i64::from(c) * i64::from(c)).sum()
    }

    /// Global sign flip `C → −C`.
    pub fn flipped(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `Σ_n C_n C_{n+k}`, the signed number of bonds of length `k`.
    pub fn autocorrelation(&self, k: usize) -> i64 {
        self.coeffs
            .iter()
            .zip(self.coeffs.iter().skip(k))
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 1)
    }
}

impl fmt::Display for SignState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.coeffs {
            f.write_str(if c > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn check_sites(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("a collective state needs at least one site".into()))
    } else {
        Ok(())
    }
}

/// Initial-time expectation values `⟨B_i† B_j⟩ = C_i C_j / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

pub fn pair_correlations(state: &SignState) -> CorrelationMatrix {
    let n = state.len();
    let inv_n = 1.0 / n as f64;
    let c = state.coeffs();
    let entries = (0..n * n)
        .map(|idx| f64::from(c[idx / n] * c[idx % n]) * inv_n)
        .collect();
    CorrelationMatrix { n, entries }
}

/// Every sign pattern on `n` sites in lexicographic order with `+1 < −1`.
pub fn enumerate_sign_states(n: usize) -> Result<Vec<SignState>> {
    check_sites(n)?;
    if n > MAX_ENUMERATED_SITES {
        return Err(Error::Domain(format!(
            "refusing to enumerate 2^{n} states (limit is {MAX_ENUMERATED_SITES} sites)"
        )));
    }
    Ok((0u32..1 << n)
        .map(|bits| SignState {
            coeffs: (0..n)
                .map(|j| if bits >> (n - 1 - j) & 1 == 0 { 1 } else { -1 })
                .collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn constructors() {
        assert_eq!(SignState::symmetric(1).unwrap().coeffs(), &[1]);
        assert_eq!(SignState::symmetric(2).unwrap().coeffs(), &[1, 1]);
        assert_eq!(SignState::symmetric(3).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(SignState::alternating(1).unwrap().coeffs(), &[1]);
        assert_eq!(SignState::alternating(2).unwrap().coeffs(), &[1, -1]);
        assert_eq!(SignState::alternating(3).unwrap().coeffs(), &[1, -1, 1]);
        assert!(matches!(SignState::symmetric(0), Err(Error::Domain(_))));
        assert!(matches!(SignState::alternating(0), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_non_unit_coefficients() {
        assert!(SignState::new(vec![1, 0, -1]).is_err());
        assert!(SignState::new(vec![2]).is_err());
        assert!(SignState::new(vec![]).is_err());
        assert_eq!(SignState::new(vec![1, -1, -1]).unwrap().weight(), 3);
    }

    #[test]
    fn parse_tokens() {
        assert_eq!(SignState::parse("sym", 3).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(SignState::parse("alt", 3).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(SignState::parse("+-++-", 5).unwrap().coeffs(), &[1, -1, 1, 1, -1]);
        assert!(matches!(SignState::parse("+-+-", 3), Err(Error::State(_))));
        assert!(matches!(SignState::parse("+x+", 3), Err(Error::State(_))));
        assert_eq!(SignState::parse("+-+", 3).unwrap().to_string(), "+-+");
    }

    #[test]
    fn pair_correlations_two_atoms() {
        let sym = pair_correlations(&SignState::symmetric(2).unwrap());
        assert!(sym.entries().iter().all(|&e| e == 0.5));
        let anti = pair_correlations(&SignState::alternating(2).unwrap());
        assert_eq!(anti.get(0, 0), 0.5);
        assert_eq!(anti.get(1, 1), 0.5);
        assert_eq!(anti.get(0, 1), -0.5);
        assert_eq!(anti.get(1, 0), -0.5);
    }

    #[test]
    fn enumeration_order_and_size() {
        let one = enumerate_sign_states(1).unwrap();
        assert_eq!(one, vec![SignState::new(vec![1]).unwrap(), SignState::new(vec![-1]).unwrap()]);
        let two = enumerate_sign_states(2).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(two[0].coeffs(), &[1, 1]);
        assert_eq!(two[1].coeffs(), &[1, -1]);
        assert_eq!(two[3].coeffs(), &[-1, -1]);
        let six = enumerate_sign_states(6).unwrap();
        assert_eq!(six.len(), 64);
        assert_eq!(six.iter().collect::<HashSet<_>>().len(), 64);
        assert!(enumerate_sign_states(MAX_ENUMERATED_SITES + 1).is_err());
        assert!(enumerate_sign_states(0).is_err());
    }

    #[test]
    fn autocorrelation_counts_bonds() {
        let s = SignState::symmetric(5).unwrap();
        assert_eq!((0..5).map(|k| s.autocorrelation(k)).collect::<Vec<_>>(), vec![5, 4, 3, 2, 1]);
        let a = SignState::alternating(4).unwrap();
        assert_eq!(a.autocorrelation(1), -3);
        assert_eq!(a.autocorrelation(2), 2);
        assert_eq!(a.autocorrelation(7), 0);
    }

    fn arb_state() -> impl proptest::strategy::Strategy<Value = SignState> {
        use proptest::prelude::*;
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..24)
            .prop_map(|c| SignState::new(c).unwrap())
    }

    proptest::proptest! {
        #[test]
        fn correlation_matrix_properties(state in arb_state()) {
            let n = state.len();
            let m = pair_correlations(&state);
            proptest::prop_assert!((m.trace() - 1.0).abs() <= 1e-12);
            proptest::prop_assert_eq!(state.weight(), n as i64);
            let c = state.coeffs();
            for i in 0..n {
                proptest::prop_assert_eq!(m.get(i, i), 1.0 / n as f64);
                for j in 0..n {
                    proptest::prop_assert_eq!(m.get(i, j), m.get(j, i));
                    proptest::prop_assert_eq!(m.get(i, j).abs(), 1.0 / n as f64);
                    // Rank one: N·M = c cᵀ exactly.
                    proptest::prop_assert!((m.get(i, j) * n as f64 - f64::from(c[i] * c[j])).abs() <= 1e-15);
                }
            }
            proptest::prop_assert_eq!(pair_correlations(&state.flipped()), m);
        }
    }
}
