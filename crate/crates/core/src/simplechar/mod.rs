//! Simple characters `ch L(λ)` in characteristic `p`, resolved by a chain of
//! strategies. Failure to resolve is reported, never guessed around.

mod jsf;
mod table;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::charring::{orbit_sum, weyl_character, FormalCharacter};
use crate::error::{Error, Result};
use crate::minuscule::{check_prime, is_minuscule, is_restricted, p_digits};
use crate::rootsys::RootDatum;
use crate::scalar::Coefficient;
use crate::weight::Weight;

pub use jsf::{jantzen_sum, jantzen_sum_expansion, jsf_solve, JsfSolution, JsfSolver, JsfStatus};
pub use table::{validate_simple_shape, SimpleCharTable, TableEntry, TableRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    Minuscule,
    LowestAlcove,
    Steinberg,
    Jsf,
    Table,
}

impl Strategy {
    /// The order `Auto` tries the computing strategies in.
    pub const CHAIN: [Strategy; 4] = [Strategy::Minuscule, Strategy::LowestAlcove, Strategy::Steinberg, Strategy::Jsf];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Minuscule => "minuscule",
            Strategy::LowestAlcove => "lowest_alcove",
            Strategy::Steinberg => "steinberg",
            Strategy::Jsf => "jsf",
            Strategy::Table => "table",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Strategy::Auto,
            Strategy::Minuscule,
            Strategy::LowestAlcove,
            Strategy::Steinberg,
            Strategy::Jsf,
            Strategy::Table,
        ]
        .into_iter()
        .find(|st| st.name() == s.replace('-', "_"))
        .ok_or_else(|| Error::Format(format!("unknown strategy {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCharRequest {
    pub lambda: Weight,
    pub p: u64,
    pub strategy: Strategy,
}

impl SimpleCharRequest {
    pub fn new(lambda: Weight, p: u64) -> Self {
        SimpleCharRequest {
            lambda,
            p,
            strategy: Strategy::Auto,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// Anything that can hand out simple characters.
pub trait SimpleCharProvider<C: Coefficient = i64> {
    fn simple_character(&self, lambda: &Weight, p: u64) -> Result<FormalCharacter<C>>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved<C: Coefficient = i64> {
    pub character: FormalCharacter<C>,
    /// The strategy that produced the character (never `Auto`).
    pub strategy: Strategy,
}

/// Strategy chain with a per-prime JSF solver and an optional table.
pub struct SimpleCharResolver<C: Coefficient = i64> {
    datum: Arc<RootDatum>,
    table: Option<SimpleCharTable<C>>,
    prefer_table: bool,
    solvers: Mutex<HashMap<u64, Arc<Mutex<JsfSolver<C>>>>>,
    resolved: Mutex<HashMap<(Weight, u64), Resolved<C>>>,
}

impl<C: Coefficient> SimpleCharResolver<C> {
    pub fn new(datum: &Arc<RootDatum>) -> Self {
        SimpleCharResolver {
            datum: datum.clone(),
            table: None,
            prefer_table: false,
            solvers: Mutex::new(HashMap::new()),
            resolved: Mutex::new(HashMap::new()),
        }
    }

    /// Attaches a table. By default computed characters are compared with
    /// it; with `prefer_table` its entries are returned without computing.
    pub fn with_table(mut self, table: SimpleCharTable<C>, prefer_table: bool) -> Result<Self> {
        if table.datum().spec() != self.datum.spec() {
            return Err(Error::DatumMismatch(
                table.datum().spec().to_string(),
                self.datum.spec().to_string(),
            ));
        }
        self.table = Some(table);
        self.prefer_table = prefer_table;
        Ok(self)
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn resolve(&self, req: &SimpleCharRequest) -> Result<Resolved<C>> {
        let SimpleCharRequest { lambda, p, strategy } = req;
        let p = *p;
        check_prime(p)?;
        self.datum.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        if *strategy != Strategy::Auto {
            return match self.try_strategy(*strategy, lambda, p)? {
                Some(character) => Ok(Resolved {
                    character,
                    strategy: *strategy,
                }),
                None => Err(Error::Undetermined {
                    weight: lambda.clone(),
                    p,
                    tried: strategy.name().to_string(),
                }),
            };
        }

        let key = (lambda.clone(), p);
        if let Some(r) = self.resolved.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let out = self.resolve_auto(lambda, p)?;
        self.resolved.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn resolve_auto(&self, lambda: &Weight, p: u64) -> Result<Resolved<C>> {
        let tabled = self.table.as_ref().and_then(|t| t.get(lambda, p));
        if self.prefer_table {
            if let Some(e) = tabled {
                return Ok(Resolved {
                    character: e.character.clone(),
                    strategy: Strategy::Table,
                });
            }
        }
        for strategy in Strategy::CHAIN {
            if let Some(character) = self.try_strategy(strategy, lambda, p)? {
                if let Some(e) = tabled {
                    if e.character != character {
                        return Err(Error::TableMismatch {
                            weight: lambda.clone(),
                            p,
                        });
                    }
                }
                return Ok(Resolved { character, strategy });
            }
        }
        if let Some(e) = tabled {
            return Ok(Resolved {
                character: e.character.clone(),
                strategy: Strategy::Table,
            });
        }
        Err(Error::Undetermined {
            weight: lambda.clone(),
            p,
            tried: "minuscule, lowest_alcove, steinberg, jsf, table".into(),
        })
    }

    /// `Ok(None)` when the strategy does not apply to `λ`.
    fn try_strategy(&self, strategy: Strategy, lambda: &Weight, p: u64) -> Result<Option<FormalCharacter<C>>> {
        let d = &self.datum;
        let ch = match strategy {
            Strategy::Auto => return self.resolve(&SimpleCharRequest::new(lambda.clone(), p)).map(|r| Some(r.character)),
            Strategy::Minuscule => {
                if !is_minuscule(d, lambda)? {
                    return Ok(None);
                }
                orbit_sum(d, lambda)?
            }
            Strategy::LowestAlcove => {
                if !d.in_lowest_alcove_closure(lambda, p) {
                    return Ok(None);
                }
                weyl_character(d, lambda)?
            }
            Strategy::Steinberg => match self.steinberg(lambda, p)? {
                Some(ch) => ch,
                None => return Ok(None),
            },
            Strategy::Jsf => {
                let solver = self
                    .solvers
                    .lock()
                    .unwrap()
                    .entry(p)
                    .or_insert_with(|| Arc::new(Mutex::new(JsfSolver::new(d, p))))
                    .clone();
                let mut solver = solver.lock().unwrap();
                match solver.character(lambda)? {
                    Some(ch) => ch,
                    None => return Ok(None),
                }
            }
            Strategy::Table => {
                return Ok(self.table.as_ref().and_then(|t| t.get(lambda, p)).map(|e| e.character.clone()));
            }
        };
        validate_simple_shape(lambda, &ch)
            .map_err(|e| Error::InternalMismatch(format!("{strategy} produced a malformed L{lambda}: {e}")))?;
        Ok(Some(ch))
    }

    /// `Π_j ch L(λ^j)^[j]` over the base-`p` digits of a non-restricted `λ`.
    /// Each digit is resolved through the full chain.
    fn steinberg(&self, lambda: &Weight, p: u64) -> Result<Option<FormalCharacter<C>>> {
        let d = &self.datum;
        if is_restricted(d, lambda, p, 1)? {
            return Ok(None);
        }
        let mut r = 2;
        while !is_restricted(d, lambda, p, r)? {
            r += 1;
        }
        let mut out = FormalCharacter::one(d);
        for (j, digit) in p_digits(d, lambda, p, r)?.iter().enumerate() {
            if digit.is_zero() {
                continue;
            }
            let factor = match self.resolve(&SimpleCharRequest::new(digit.clone(), p)) {
                Ok(res) => res.character,
                Err(Error::Undetermined { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            out = out.checked_mul(&factor.frobenius_twist(p, j as u32))?;
        }
        Ok(Some(out))
    }

    /// Which of the computing strategies apply to `λ`, with their results.
    pub fn applicable(&self, lambda: &Weight, p: u64) -> Result<Vec<(Strategy, FormalCharacter<C>)>> {
        let mut out = Vec::new();
        for strategy in Strategy::CHAIN.into_iter().chain([Strategy::Table]) {
            let req = SimpleCharRequest::new(lambda.clone(), p).with_strategy(strategy);
            match self.resolve(&req) {
                Ok(r) => out.push((strategy, r.character)),
                Err(Error::Undetermined { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

impl<C: Coefficient> SimpleCharProvider<C> for SimpleCharResolver<C> {
    fn simple_character(&self, lambda: &Weight, p: u64) -> Result<FormalCharacter<C>> {
        self.resolve(&SimpleCharRequest::new(lambda.clone(), p)).map(|r| r.character)
    }
}

/// One-shot resolution without a table.
pub fn simple_character<C: Coefficient>(d: &Arc<RootDatum>, req: &SimpleCharRequest) -> Result<FormalCharacter<C>> {
    SimpleCharResolver::new(d).resolve(req).map(|r| r.character)
}
