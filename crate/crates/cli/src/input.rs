//! Parsing of the positional spec and selection of the complex to work on.

use std::fmt;

use clap::ValueEnum;
use nc_complex::complex::{c_complex, nc_complex, order_complex, read_face_list, FaceList, FlagComplex, SimplicialComplex};
use nc_complex::group::{ap_poset, parse_group_spec, FiniteGroup};
use nc_complex::homology::{homology_profile, Coefficients, HomologyProfile};
use nc_complex::structure::{group_structure, parse_structure_spec, CommutingStructure, GroupScope};
use nc_complex::{Error, Limits};

const STRUCTURE_PREFIXES: [&str; 4] = ["g:", "symp:", "proj:", "quot:"];

pub enum Input {
    Group(FiniteGroup),
    Structure(CommutingStructure),
    Faces(FaceList),
}

impl Input {
    pub fn parse(spec: &str) -> Result<Input, Error> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("faces:") {
            return Ok(Input::Faces(read_face_list(std::path::Path::new(path))?));
        }
        if STRUCTURE_PREFIXES.iter().any(|p| spec.starts_with(p)) {
            return Ok(Input::Structure(parse_structure_spec(spec)?));
        }
        Ok(Input::Group(parse_group_spec(spec)?))
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match self {
            Input::Group(g) => Some(g),
            _ => None,
        }
    }
}

/// Which complex of the input to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Non-commuting complex on all nontrivial elements (or on the structure).
    Nc,
    /// Non-commuting complex on the noncentral elements.
    Bnc,
    /// Commuting complex on all nontrivial elements (or on the structure).
    C,
    /// Non-commuting complex on the elements of order p.
    Ncp,
    /// Non-commuting complex on the noncentral elements of order p.
    Bncp,
    /// Commuting complex on the elements of order p.
    Cp,
    /// Order complex of the nontrivial elementary abelian p-subgroups.
    Ap,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn need_p(kind: Kind, p: Option<u64>) -> Result<u64, UsageError> {
    p.ok_or_else(|| UsageError(format!("--kind {kind} needs -p <prime>")))
}

/// The commuting structure behind a flag-complex kind.
pub fn structure_of(input: &Input, kind: Kind, p: Option<u64>) -> Result<CommutingStructure, Box<dyn std::error::Error>> {
    match input {
        Input::Group(g) => {
            let scope = match kind {
                Kind::Nc | Kind::C => GroupScope::AllNontrivial,
                Kind::Bnc => GroupScope::Noncentral,
                Kind::Ncp | Kind::Cp => GroupScope::OrderP(need_p(kind, p)?),
                Kind::Bncp => GroupScope::NoncentralOrderP(need_p(kind, p)?),
                Kind::Ap => return Err(UsageError("--kind ap is an order complex, not a structure".into()).into()),
            };
            Ok(group_structure(g, scope).map_err(Error::from)?)
        }
        Input::Structure(s) => match kind {
            Kind::Nc | Kind::C => Ok(s.clone()),
            _ => Err(UsageError(format!("--kind {kind} needs a group spec")).into()),
        },
        Input::Faces(_) => Err(UsageError("face lists carry no commuting structure".into()).into()),
    }
}

pub enum AnyComplex {
    Flag(FlagComplex),
    List(FaceList),
}

impl AnyComplex {
    pub fn as_dyn(&self) -> &dyn SimplicialComplex {
        match self {
            AnyComplex::Flag(x) => x,
            AnyComplex::List(x) => x,
        }
    }

    pub fn homology(&self, coeff: Coefficients, up_to: Option<usize>, limits: &Limits) -> Result<HomologyProfile, Error> {
        Ok(match self {
            AnyComplex::Flag(x) => homology_profile(x, coeff, up_to, limits)?,
            AnyComplex::List(x) => homology_profile(x, coeff, up_to, limits)?,
        })
    }
}

pub fn complex_of(input: &Input, kind: Kind, p: Option<u64>) -> Result<AnyComplex, Box<dyn std::error::Error>> {
    if let Input::Faces(x) = input {
        return Ok(AnyComplex::List(x.clone()));
    }
    match kind {
        Kind::Ap => {
            let g = input
                .group()
                .ok_or_else(|| UsageError("--kind ap needs a group spec".into()))?;
            let poset = ap_poset(g, need_p(kind, p)?).map_err(Error::from)?;
            Ok(AnyComplex::List(order_complex(&poset)))
        }
        Kind::C | Kind::Cp => Ok(AnyComplex::Flag(c_complex(&structure_of(input, kind, p)?))),
        _ => Ok(AnyComplex::Flag(nc_complex(&structure_of(input, kind, p)?))),
    }
}
