//! Dispatch of validated requests onto the core calculus.

use eqtorsion::{
    chi_equivariant, chi_from_invariants, corner_torsion, power_sums, prony_recover,
    rank1_symmetric_space, restrict_torus_to_circle, t_s1, t_torus, CornerChi, EulerElement, Group,
    OrbitSpectrum, SymmetricSpaceData, TorsionSeries,
};

use crate::request::{ChiInput, NumericRequest, Request, TorsionInput};

pub enum Output {
    Element(EulerElement),
    Series {
        series: TorsionSeries,
        numeric: Option<f64>,
    },
    Corner(CornerChi),
    Inversion {
        spectrum: OrbitSpectrum,
        element: EulerElement,
    },
    Value(f64),
}

fn attach_numeric(
    series: TorsionSeries,
    numeric: &Option<NumericRequest>,
) -> Result<Output, eqtorsion::Error> {
    let numeric = match numeric {
        Some(n) => Some(series.eval_numeric_with_tolerance(&n.point, n.zeta_tol)?),
        None => None,
    };
    Ok(Output::Series { series, numeric })
}

pub fn execute(request: &Request) -> Result<Output, eqtorsion::Error> {
    match request {
        Request::Chi { input } => {
            let element = match input {
                ChiInput::Cells(cells) => chi_equivariant(cells),
                ChiInput::Corner(corner) => corner.chi(),
            };
            Ok(Output::Element(element))
        }
        Request::Torsion {
            group,
            input,
            truncation,
            numeric,
        } => {
            let series = match (input, group) {
                (TorsionInput::Cells(cells), Group::Circle) => {
                    eqtorsion::torsion_closed(cells, *truncation)?
                }
                (TorsionInput::Cells(cells), Group::Torus { .. }) => {
                    t_torus(&chi_equivariant(cells), *truncation)?
                }
                (TorsionInput::Element(element), Group::Circle) => t_s1(element, *truncation)?,
                (TorsionInput::Element(element), Group::Torus { .. }) => {
                    t_torus(element, *truncation)?
                }
                (TorsionInput::Corner(corner), _) => corner_torsion(corner, *truncation)?,
            };
            attach_numeric(series, numeric)
        }
        Request::RestrictElement { element, vector } => {
            Ok(Output::Element(restrict_torus_to_circle(element, vector)?))
        }
        Request::RestrictSeries {
            series,
            vector,
            numeric,
        } => attach_numeric(series.restrict_to_line(vector)?, numeric),
        Request::Invert { series, euler_char } => {
            let spectrum = prony_recover(&power_sums(series)?)?;
            let element = chi_from_invariants(series, euler_char)?;
            Ok(Output::Inversion { spectrum, element })
        }
        Request::Double { corner, piece } => Ok(Output::Corner(corner.double(*piece)?)),
        Request::Glue { first, second } => Ok(Output::Corner(first.glue(second)?)),
        Request::Symspace {
            rank,
            covectors,
            truncation,
            numeric,
        } => {
            let data = SymmetricSpaceData::new(*rank, covectors.clone())?;
            attach_numeric(rank1_symmetric_space(&data, *truncation), numeric)
        }
        Request::Eval { series, point } => Ok(Output::Value(series.eval_numeric(point)?)),
    }
}
