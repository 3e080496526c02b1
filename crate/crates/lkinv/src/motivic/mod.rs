//! Grothendieck-ring bookkeeping for zeta functions of resolution data,
//! motivic Milnor fibres, A'Campo's formula and real signed fibres.

mod acampo;
mod class;
mod oracle;
mod real;
mod resolution;
mod zeta;

pub use acampo::{
    acampo_lefschetz, chi_zeta_closed_form, consistency_check_14, ChiZetaClosedForm, ConsistencyReport, ConsistencyRow,
    MonodromyProfile,
};
pub use class::{ClassJson, GrothendieckClass};
pub use oracle::{germ_chi_oracle, oracle_values, OracleConfig, Polynomial, PolynomialJson, Question, RealOracleValues};
pub use real::{power_sums, real_chi_relations, PowerSums, RealReport, RealSignRow};
pub use resolution::{Component, Mode, ResolutionData, ResolutionJson, Sign, Stratum, StratumJson};
pub use zeta::{
    euler_realization, expand_series, expand_series_chi, milnor_fibre_chi, milnor_fibre_via_inverse_series,
    monodromy_pole_candidates, motivic_milnor_fibre, rational_json, realization_point, zeta_from_resolution, Gate,
    PoleCandidate, ZetaFunction, ZetaTerm,
};
