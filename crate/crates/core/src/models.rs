//! Benchmark Hamiltonians as two-part splits `H = H1 + H2`.

use faer::c64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Identifies the generator behind [`sample_disorder`]; written into every
/// experiment's metadata.
pub const RNG_IDENTIFIER: &str =
    "rand_chacha-0.3 ChaCha8Rng::seed_from_u64; rand-0.8 gen_range(-1.0..=1.0)";

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPartHamiltonian {
    pub h1: PauliSum,
    pub h2: PauliSum,
    pub label: String,
    /// Local fields, when the model was built from a disorder draw.
    pub disorder: Option<Vec<f64>>,
}

impl TwoPartHamiltonian {
    pub fn new(h1: PauliSum, h2: PauliSum, label: impl Into<String>) -> Result<Self> {
        if h1.n() != h2.n() {
            return Err(input(format!(
                "parts act on different qubit counts: {} vs {}",
                h1.n(),
                h2.n()
            )));
        }
        if !h1.is_hermitian() || !h2.is_hermitian() {
            return Err(input("Hamiltonian parts must have real coefficients"));
        }
        Ok(Self { h1, h2, label: label.into(), disorder: None })
    }

    pub fn n(&self) -> usize {
        self.h1.n()
    }

    pub fn total(&self) -> PauliSum {
        self.h1.add(&self.h2).expect("parts share a qubit count")
    }

    /// The same Hamiltonian with the roles of the parts exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            h1: self.h2.clone(),
            h2: self.h1.clone(),
            label: format!("{} (swapped)", self.label),
            disorder: self.disorder.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisorderSpec {
    pub seed: u64,
    pub n: usize,
}

/// `n` independent fields uniform on `[-1, 1]`, fixed by `seed`.
pub fn sample_disorder(spec: DisorderSpec) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

fn real(x: f64) -> c64 {
    c64::new(x, 0.0)
}

/// Open-boundary Heisenberg chain with local Z fields, split into even and
/// odd bonds. Bond `(j, j+1)` and field `h[j] Z_j` go to `h1` when `j` is
/// even and to `h2` when odd.
pub fn heisenberg_1d(n: usize, h: &[f64]) -> Result<TwoPartHamiltonian> {
    if n < 2 {
        return Err(input(format!("Heisenberg chain needs n >= 2, got {n}")));
    }
    if h.len() != n {
        return Err(input(format!("expected {n} local fields, got {}", h.len())));
    }
    let mut parts = [PauliSum::zero(n)?, PauliSum::zero(n)?];
    for j in 0..n - 1 {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            parts[j % 2].add_term(real(1.0), PauliString::pair(n, j, j + 1, p)?)?;
        }
    }
    for (j, &hj) in h.iter().enumerate() {
        parts[j % 2].add_term(real(hj), PauliString::single(n, j, Pauli::Z)?)?;
    }
    let [h1, h2] = parts;
    let mut model = TwoPartHamiltonian::new(h1, h2, format!("heisenberg1d n={n}"))?;
    model.disorder = Some(h.to_vec());
    Ok(model)
}

/// Transverse-field Ising model on an arbitrary interaction graph:
/// `h1 = sum J_ij Z_i Z_j`, `h2 = sum g_j X_j`.
pub fn tfim_1d(n: usize, couplings: &[(usize, usize, f64)], field: &[f64]) -> Result<TwoPartHamiltonian> {
    if n == 0 {
        return Err(input("TFIM needs at least one qubit"));
    }
    if field.len() != n {
        return Err(input(format!("expected {n} field values, got {}", field.len())));
    }
    let mut h1 = PauliSum::zero(n)?;
    for &(i, j, jij) in couplings {
        if i >= n || j >= n || i == j {
            return Err(input(format!("invalid coupling ({i}, {j}) for n = {n}")));
        }
        h1.add_term(real(jij), PauliString::pair(n, i, j, Pauli::Z)?)?;
    }
    let mut h2 = PauliSum::zero(n)?;
    for (j, &g) in field.iter().enumerate() {
        h2.add_term(real(g), PauliString::single(n, j, Pauli::X)?)?;
    }
    TwoPartHamiltonian::new(h1, h2, format!("tfim n={n}"))
}

/// Nearest-neighbour couplings `(j, j+1, J)` along an open chain.
pub fn chain_couplings(n: usize, j: f64) -> Vec<(usize, usize, f64)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1, j)).collect()
}

/// A user-supplied split, each part given as term strings such as `"0.5 ZI"`.
pub fn custom_model<S: AsRef<str>>(n: usize, h1: &[S], h2: &[S]) -> Result<TwoPartHamiltonian> {
    let check = |terms: &[S], which: &str| -> Result<PauliSum> {
        let sum = PauliSum::parse(n, terms)?;
        for t in terms {
            let (c, _) = crate::pauli::parse_term(t.as_ref())?;
            if c.im != 0.0 {
                return Err(input(format!(
                    "{which} term {:?} has a non-real coefficient",
                    t.as_ref()
                )));
            }
        }
        Ok(sum)
    };
    let a = check(h1, "h1")?;
    let b = check(h2, "h2")?;
    TwoPartHamiltonian::new(a, b, format!("custom n={n}"))
}

/// JSON model description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum ModelConfig {
    /// Fields come from `h` when given, else from `seed`, else all zero.
    #[serde(rename = "heisenberg1d")]
    Heisenberg1d {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h: Option<Vec<f64>>,
    },
    /// Couplings default to a unit-strength open chain, fields to 1.
    #[serde(rename = "tfim1d")]
    Tfim1d {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        couplings: Option<Vec<(usize, usize, f64)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<Vec<f64>>,
    },
    #[serde(rename = "custom")]
    Custom { n: usize, h1: Vec<String>, h2: Vec<String> },
}

impl ModelConfig {
    pub fn n(&self) -> usize {
        match self {
            ModelConfig::Heisenberg1d { n, .. }
            | ModelConfig::Tfim1d { n, .. }
            | ModelConfig::Custom { n, .. } => *n,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            ModelConfig::Heisenberg1d { seed, .. } => *seed,
            _ => None,
        }
    }

    pub fn build(&self) -> Result<TwoPartHamiltonian> {
        match self {
            ModelConfig::Heisenberg1d { n, seed, h } => {
                let fields = match (h, seed) {
                    (Some(h), _) => h.clone(),
                    (None, Some(s)) => sample_disorder(DisorderSpec { seed: *s, n: *n }),
                    (None, None) => vec![0.0; *n],
                };
                heisenberg_1d(*n, &fields)
            }
            ModelConfig::Tfim1d { n, couplings, field } => {
                let couplings = couplings.clone().unwrap_or_else(|| chain_couplings(*n, 1.0));
                let field = field.clone().unwrap_or_else(|| vec![1.0; *n]);
                tfim_1d(*n, &couplings, &field)
            }
            ModelConfig::Custom { n, h1, h2 } => custom_model(*n, h1, h2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::to_dense;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn two_site_chain_has_only_even_bond() {
        let m = heisenberg_1d(2, &[0.0, 0.0]).unwrap();
        assert_eq!(m.h1, PauliSum::parse(2, &["XX", "YY", "ZZ"]).unwrap());
        assert!(m.h2.is_empty());
    }

    #[test]
    fn three_site_chain_by_hand() {
        let m = heisenberg_1d(3, &[0.5, -0.25, 1.0]).unwrap();
        let h1 = PauliSum::parse(3, &["XXI", "YYI", "ZZI", "0.5 ZII", "1.0 IIZ"]).unwrap();
        let h2 = PauliSum::parse(3, &["IXX", "IYY", "IZZ", "-0.25 IZI"]).unwrap();
        assert_eq!(m.h1, h1);
        assert_eq!(m.h2, h2);
    }

    #[test]
    fn four_site_term_counts() {
        let m = heisenberg_1d(4, &[0.0; 4]).unwrap();
        assert_eq!(m.h1.len(), 6);
        assert_eq!(m.h2.len(), 3);
    }

    #[test]
    fn interaction_and_field_counts() {
        let h = [0.3, 0.0, -0.7, 0.1, 0.0, 0.9];
        let m = heisenberg_1d(6, &h).unwrap();
        assert_eq!(m.total().len(), 3 * 5 + 4);
    }

    #[test]
    fn bonds_within_a_part_have_disjoint_support() {
        let m = heisenberg_1d(9, &[0.0; 9]).unwrap();
        for part in [&m.h1, &m.h2] {
            let bonds: Vec<u64> = part
                .iter()
                .filter(|(p, _)| p.axes().iter().filter(|a| **a == Pauli::X).count() == 2)
                .map(|(p, _)| p.support())
                .collect();
            for (i, a) in bonds.iter().enumerate() {
                for b in &bonds[i + 1..] {
                    assert_eq!(a & b, 0);
                }
            }
        }
    }

    #[test]
    fn heisenberg_input_errors() {
        assert!(heisenberg_1d(1, &[0.0]).is_err());
        assert!(heisenberg_1d(3, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn disorder_is_seeded_and_bounded() {
        let a = sample_disorder(DisorderSpec { seed: 7, n: 50 });
        let b = sample_disorder(DisorderSpec { seed: 7, n: 50 });
        assert_eq!(a, b);
        assert!(a.iter().all(|x| (-1.0..=1.0).contains(x)));
    }

    #[test]
    fn distinct_seeds_give_distinct_draws() {
        let draws: Vec<Vec<f64>> =
            (0..100).map(|s| sample_disorder(DisorderSpec { seed: s, n: 10 })).collect();
        for i in 0..draws.len() {
            for j in i + 1..draws.len() {
                assert_ne!(draws[i], draws[j], "seeds {i} and {j} collide");
            }
        }
    }

    #[test]
    fn tfim_construction() {
        let m = tfim_1d(2, &[(0, 1, 1.0)], &[1.0, 1.0]).unwrap();
        assert_eq!(m.h1, PauliSum::parse(2, &["ZZ"]).unwrap());
        assert_eq!(m.h2, PauliSum::parse(2, &["XI", "IX"]).unwrap());

        let ring = tfim_1d(3, &[(0, 1, 1.0), (1, 2, 0.5), (0, 2, -0.3)], &[1.0; 3]).unwrap();
        assert_eq!(ring.h1.len(), 3);
        assert_eq!(ring.h1.coefficient(&ps("ZIZ")), c64::new(-0.3, 0.0));

        let d = to_dense(&ring.h1).unwrap().to_full();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(d[(i, j)], c64::new(0.0, 0.0));
                }
            }
        }
        assert!(tfim_1d(2, &[(0, 2, 1.0)], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn custom_models() {
        let m = custom_model(2, &["1.0 XX"], &["0.5 ZI"]).unwrap();
        assert_eq!(m.h1, PauliSum::parse(2, &["XX"]).unwrap());
        assert_eq!(m.h2.coefficient(&ps("ZI")), c64::new(0.5, 0.0));
        assert!(custom_model(2, &["1.0+2.0i XX"], &["ZI"]).is_err());
        let empty: [&str; 0] = [];
        let single = custom_model(2, &["XX"], &empty).unwrap();
        assert!(single.h2.is_empty());
        assert!(matches!(
            custom_model(2, &["0.5 XQ"], &empty),
            Err(crate::Error::Parse { position: 5, .. })
        ));
    }

    #[test]
    fn config_json() {
        let cfg: ModelConfig = serde_json::from_str(r#"{"type":"heisenberg1d","n":4,"seed":3}"#).unwrap();
        let m = cfg.build().unwrap();
        assert_eq!(m.disorder.unwrap(), sample_disorder(DisorderSpec { seed: 3, n: 4 }));

        let cfg: ModelConfig =
            serde_json::from_str(r#"{"type":"custom","n":2,"h1":["1.0 XX"],"h2":["0.5 ZI"]}"#).unwrap();
        assert_eq!(cfg.build().unwrap().n(), 2);

        let cfg: ModelConfig = serde_json::from_str(r#"{"type":"tfim1d","n":3}"#).unwrap();
        let m = cfg.build().unwrap();
        assert_eq!((m.h1.len(), m.h2.len()), (2, 3));

        assert!(serde_json::from_str::<ModelConfig>(r#"{"type":"ladder","n":3}"#).is_err());
    }
}
