//! JSON documents for certificates. Circuits are stored once, keyed by the
//! SHA-256 of their canonical text, and every reference is re-hashed on
//! load.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitError, Metrics};
use crate::poly::SparsePoly;
use crate::refute::{Axiom, AxiomForm, NullstellensatzCertificate};
use crate::BUILDER_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("circuit stored under {claimed} hashes to {actual}")]
    HashMismatch { claimed: String, actual: String },
    #[error("no circuit with hash {0}")]
    MissingCircuit(String),
    #[error("circuit {hash}: {source}")]
    Circuit { hash: String, source: CircuitError },
    #[error("axiom `{label}`: {message}")]
    Poly { label: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomRef {
    Poly(String),
    Circuit(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub label: String,
    pub axiom: AxiomRef,
    pub cofactor: String,
    pub metrics: Metrics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub version: String,
    pub circuits: BTreeMap<String, String>,
    pub entries: Vec<EntryDoc>,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &NullstellensatzCertificate) -> Self {
        let mut circuits = BTreeMap::new();
        let mut store = |c: &Circuit| {
            let hash = c.content_hash();
            circuits.entry(hash.clone()).or_insert_with(|| c.to_text());
            hash
        };
        let entries = cert
            .axioms
            .iter()
            .zip(&cert.cofactors)
            .zip(&cert.claimed_metrics)
            .map(|((ax, cof), metrics)| EntryDoc {
                label: ax.label.clone(),
                axiom: match &ax.form {
                    AxiomForm::Poly(p) => AxiomRef::Poly(p.to_string()),
                    AxiomForm::Circuit(c) => AxiomRef::Circuit(store(c)),
                },
                cofactor: store(cof),
                metrics: *metrics,
            })
            .collect();
        CertificateDocument { version: BUILDER_VERSION.to_string(), circuits, entries }
    }

    /// Rebuilds the certificate, rejecting any circuit whose text does not
    /// hash to its key.
    pub fn to_certificate(&self) -> Result<NullstellensatzCertificate, DocumentError> {
        let mut parsed: BTreeMap<&str, Circuit> = BTreeMap::new();
        for (hash, text) in &self.circuits {
            let c = Circuit::parse(text).map_err(|source| DocumentError::Circuit { hash: hash.clone(), source })?;
            let actual = c.content_hash();
            if actual != *hash {
                return Err(DocumentError::HashMismatch { claimed: hash.clone(), actual });
            }
            parsed.insert(hash, c);
        }
        let fetch = |h: &str| parsed.get(h).cloned().ok_or_else(|| DocumentError::MissingCircuit(h.to_string()));
        let mut axioms = Vec::with_capacity(self.entries.len());
        let mut cofactors = Vec::with_capacity(self.entries.len());
        let mut claimed_metrics = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let form = match &e.axiom {
                AxiomRef::Poly(text) => AxiomForm::Poly(
                    text.parse::<SparsePoly>()
                        .map_err(|err| DocumentError::Poly { label: e.label.clone(), message: err.to_string() })?,
                ),
                AxiomRef::Circuit(h) => AxiomForm::Circuit(fetch(h)?),
            };
            axioms.push(Axiom { label: e.label.clone(), form });
            cofactors.push(fetch(&e.cofactor)?);
            claimed_metrics.push(e.metrics);
        }
        Ok(NullstellensatzCertificate { axioms, cofactors, claimed_metrics })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::gadget::gadgetize;
    use crate::refute::assemble_refutation;
    use crate::var::VarId;

    fn cert() -> NullstellensatzCertificate {
        let mut b = CircuitBuilder::new();
        let (x1, x2) = (b.var(VarId::x(1)), b.var(VarId::x(2)));
        let root = b.add(vec![x1, x2]);
        let (c, ledger) = gadgetize(&b.finish(root)).unwrap();
        assemble_refutation(&c, &ledger).unwrap()
    }

    #[test]
    fn round_trip() {
        let c = cert();
        let doc = CertificateDocument::from_certificate(&c);
        assert_eq!(doc.version, BUILDER_VERSION);
        let text = doc.to_json();
        let back = CertificateDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_certificate().unwrap(), c);
        assert_eq!(CertificateDocument::from_certificate(&back.to_certificate().unwrap()).to_json(), text);
    }

    #[test]
    fn tampered_circuit_is_rejected() {
        let mut doc = CertificateDocument::from_certificate(&cert());
        let (hash, text) = doc.circuits.iter().next().map(|(h, t)| (h.clone(), t.clone())).unwrap();
        doc.circuits
            .insert(hash.clone(), text.replacen("CONST 1/1", "CONST 3/1", 1).replacen("CONST -1/2", "CONST 1/2", 1));
        assert!(matches!(doc.to_certificate(), Err(DocumentError::HashMismatch { .. })));
        doc.circuits.remove(&hash);
        assert!(matches!(doc.to_certificate(), Err(DocumentError::MissingCircuit(_))));
    }
}
