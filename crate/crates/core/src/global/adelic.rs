//! Adelic one-forms and the residue-pairing globality test.

use std::fmt;

use super::{local_expand, local_form, pole_places, residue_at, Place, PlaceKind};
use super::reconstruct::rational_reconstruct;
use crate::error::{Error, Result};
use crate::ff::Fq;
use crate::poly::Poly;
use crate::series::{GlobalForm, LocalForm, RationalFunction};

/// Coefficients required beyond the unknowns before a reconstruction is
/// accepted as evidence.
const RECONSTRUCTION_MARGIN: i64 = 4;

/// The section carried by the places outside the support.
#[derive(Clone, Debug, PartialEq)]
pub enum DefaultForm {
    Zero,
    Global(GlobalForm),
}

/// A restricted-product element: explicit local forms at finitely many
/// places, and the expansions of a default global form (or zero) elsewhere.
#[derive(Clone, Debug)]
pub struct AdelicForm {
    field: Fq,
    support: Vec<(Place, LocalForm)>,
    default: DefaultForm,
}

/// The outcome of a trial-bounded globality test.
#[derive(Clone, Debug, PartialEq)]
pub enum TateVerdict {
    /// Every trial multiplier gave zero. `evidence` is a global form whose
    /// expansions match the local data, when one could be reconstructed.
    PassedAllTrials {
        trials: usize,
        evidence: Option<GlobalForm>,
    },
    /// `sum_v Tr Res(witness * omega_v) = value != 0`.
    Failed { witness: RationalFunction, value: u32 },
}

impl AdelicForm {
    pub fn new(field: Fq, default: DefaultForm) -> Result<AdelicForm> {
        if let DefaultForm::Global(w) = &default {
            if w.coeff().field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(AdelicForm {
            field,
            support: Vec::new(),
            default,
        })
    }

    /// The diagonal image of `omega`, listing its expansions at `places`.
    pub fn diagonal(omega: &GlobalForm, places: &[Place], prec: i64) -> Result<AdelicForm> {
        let mut a = AdelicForm::new(omega.coeff().field(), DefaultForm::Global(omega.clone()))?;
        for v in places {
            a.set(v.clone(), local_form(omega, v, prec)?)?;
        }
        Ok(a)
    }

    /// Sets the local form at `v`, replacing any previous one.
    pub fn set(&mut self, v: Place, form: LocalForm) -> Result<()> {
        if v.base_field() != self.field || form.coeff().field() != v.residue_field() {
            return Err(Error::FieldMismatch);
        }
        match self.support.iter_mut().find(|(w, _)| *w == v) {
            Some(slot) => slot.1 = form,
            None => self.support.push((v, form)),
        }
        Ok(())
    }

    pub fn with(mut self, v: Place, form: LocalForm) -> Result<AdelicForm> {
        self.set(v, form)?;
        Ok(self)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn support(&self) -> &[(Place, LocalForm)] {
        &self.support
    }

    pub fn default_form(&self) -> &DefaultForm {
        &self.default
    }

    /// `sum_v Tr_{F(v)/F_p} Res_v(m * omega_v)` as an integer mod p.
    pub fn traced_sum(&self, m: &RationalFunction) -> Result<u32> {
        let p = self.field.p();
        let mut total = 0u32;
        for (v, w) in &self.support {
            let vw = w.coeff().valuation().unwrap_or(w.coeff().prec());
            let mv = local_expand(m, v, (-vw).max(0).saturating_add(1))?;
            let res = LocalForm::new(&mv * w.coeff()).residue()?;
            total = (total + res.trace()) % p;
        }
        if let DefaultForm::Global(w0) = &self.default {
            let g = GlobalForm::new(m * w0.coeff());
            for v in pole_places(g.coeff()) {
                if self.support.iter().any(|(w, _)| *w == v) {
                    continue;
                }
                total = (total + residue_at(&g, &v)?.trace()) % p;
            }
        }
        Ok(total)
    }

    /// A global form whose expansions agree with every local form in the
    /// support, consistent with the default section. Reconstruction runs at
    /// the degree-one place with the widest window.
    pub fn reconstruct(&self) -> Option<GlobalForm> {
        let (v, w) = self
            .support
            .iter()
            .filter(|(v, _)| v.degree() == 1)
            .max_by_key(|(_, w)| w.coeff().prec().saturating_sub(w.coeff().lo().min(0)))?;
        let candidate = reconstruct_at(v, w)?;
        self.consistent(&candidate).then_some(candidate)
    }

    /// Whether `omega` expands to the local data at every supported place and
    /// matches the default section elsewhere.
    pub fn consistent(&self, omega: &GlobalForm) -> bool {
        for (v, w) in &self.support {
            match local_form(omega, v, w.coeff().prec()) {
                Ok(e) if e.coeff().agrees_with(w.coeff()) => {}
                _ => return false,
            }
        }
        match &self.default {
            DefaultForm::Global(w0) => w0 == omega,
            // zero default: the unlisted places only carry integral forms
            DefaultForm::Zero => pole_places(omega.coeff()).iter().all(|v| {
                self.support.iter().any(|(w, _)| w == v)
                    || local_form(omega, v, 0).map(|l| l.coeff().is_zero()).unwrap_or(false)
            }),
        }
    }
}

fn reconstruct_at(v: &Place, w: &LocalForm) -> Option<GlobalForm> {
    let field = v.base_field();
    // the coefficient of dt as a series in the local variable
    let s = match v.kind() {
        PlaceKind::Finite(_) => w.coeff().clone(),
        PlaceKind::Infinity => -&w.coeff().shift(2),
    };
    let width = s.prec().saturating_sub(s.lo().min(0)) - RECONSTRUCTION_MARGIN;
    if width < 1 {
        return None;
    }
    let deg = ((width - 1) / 2).min(64) as usize;
    let r = rational_reconstruct(&s, deg, deg)?;
    let back = match v.kind() {
        PlaceKind::Finite(_) => {
            let shift = -v.theta();
            RationalFunction::new(r.num().taylor_shift(shift), r.den().taylor_shift(shift)).ok()?
        }
        PlaceKind::Infinity => {
            let (dn, dd) = (r.num().deg(), r.den().deg());
            if r.is_zero() {
                r
            } else {
                let num = r.num().reversal(dn as usize);
                let den = r.den().reversal(dd as usize);
                let e = dd - dn;
                let mono = Poly::monomial(field.one(), e.unsigned_abs() as usize);
                if e >= 0 {
                    RationalFunction::new(&num * &mono, den).ok()?
                } else {
                    RationalFunction::new(num, &den * &mono).ok()?
                }
            }
        }
    };
    Some(GlobalForm::new(back))
}

impl TrialFamily {
    pub fn monomials(j_bound: i64) -> TrialFamily {
        TrialFamily {
            j_bound,
            extra: Vec::new(),
        }
    }

    /// `1, t, t^-1, ..., t^J, t^-J` followed by the extra multipliers.
    pub fn multipliers(&self, field: Fq) -> Vec<RationalFunction> {
        let mut out = vec![RationalFunction::one(field)];
        for j in 1..=self.j_bound {
            out.push(RationalFunction::t_power(field, j));
            out.push(RationalFunction::t_power(field, -j));
        }
        out.extend(self.extra.iter().cloned());
        out
    }
}

/// Trial multipliers: monomials `t^j` with `|j| <= j_bound` plus extras.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialFamily {
    pub j_bound: i64,
    pub extra: Vec<RationalFunction>,
}

impl Default for TrialFamily {
    fn default() -> TrialFamily {
        TrialFamily::monomials(12)
    }
}

/// Runs the residue pairing against every trial multiplier. The first
/// nonzero sum is returned as a witness; otherwise the verdict carries a
/// reconstructed global form when one is found.
pub fn tate_global_test(omega: &AdelicForm, trials: &[RationalFunction]) -> Result<TateVerdict> {
    for m in trials {
        let value = omega.traced_sum(m)?;
        if value != 0 {
            return Ok(TateVerdict::Failed {
                witness: m.clone(),
                value,
            });
        }
    }
    Ok(TateVerdict::PassedAllTrials {
        trials: trials.len(),
        evidence: omega.reconstruct(),
    })
}

impl fmt::Display for TateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TateVerdict::PassedAllTrials { trials, evidence } => {
                write!(f, "passed all {trials} trials")?;
                if let Some(e) = evidence {
                    write!(f, "; reconstructed global form {e}")?;
                }
                Ok(())
            }
            TateVerdict::Failed { witness, value } => {
                write!(f, "failed: multiplier {witness} gives {value}")
            }
        }
    }
}
