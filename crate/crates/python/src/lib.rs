//! Python module `pwcanon`.
//!
//! Values cross the boundary as strings and `fractions.Fraction`; an
//! undefined value is `None`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

use pwcanon_core::ordered::parse_rational;
use pwcanon_core::piecewise::{add, mul, neg, sub};
use pwcanon_core::syntax::{parse_operator, parse_piece, print, OperatorJson};
use pwcanon_core::{
    canonical_form, equiv_piecewise, pseudonormalform, refine, Breakpoint, BreakpointSet, PieceFunction,
    PiecewiseOperator, PolynomialDomain, RationalDomain, Value,
};

type Op = PiecewiseOperator<PieceFunction>;

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts `int`, `str` or `fractions.Fraction`.
fn breakpoint(obj: &Bound<'_, PyAny>) -> PyResult<Breakpoint> {
    let text = obj.str()?.to_string();
    parse_rational(&text).map(Breakpoint::new).map_err(value_error)
}

fn fraction<'py>(py: Python<'py>, b: &Breakpoint) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((b.to_string(),))
}

/// Runs `f` with the domain selected by `rational`.
macro_rules! with_domain {
    ($rational:expr, |$d:ident| $body:expr) => {
        if $rational {
            let $d = RationalDomain;
            $body
        } else {
            let $d = PolynomialDomain;
            $body
        }
    };
}

/// A piecewise function of one variable `x` over the rationals.
#[pyclass(module = "pwcanon", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Piecewise {
    op: Op,
    rational: bool,
}

impl Piecewise {
    fn wrap(&self, op: Op) -> Self {
        Piecewise {
            op,
            rational: self.rational,
        }
    }

    fn binary(&self, other: &Piecewise, f: BinaryOp) -> PyResult<Self> {
        let rational = self.rational || other.rational;
        let op = with_domain!(rational, |d| match f {
            BinaryOp::Add => add(&d, &self.op, &other.op),
            BinaryOp::Sub => sub(&d, &self.op, &other.op),
            BinaryOp::Mul => mul(&d, &self.op, &other.op),
        })
        .map_err(value_error)?;
        Ok(Piecewise { op, rational })
    }
}

enum BinaryOp {
    Add,
    Sub,
    Mul,
}

fn coerce(obj: &Bound<'_, PyAny>) -> PyResult<Piecewise> {
    if let Ok(p) = obj.cast::<Piecewise>() {
        return Ok(p.get().clone());
    }
    let text = obj.str()?.to_string();
    let piece = parse_piece(&text).map_err(value_error)?;
    Ok(Piecewise {
        op: PiecewiseOperator::constant(PieceFunction::Expr(piece)),
        rational: false,
    })
}

#[pymethods]
impl Piecewise {
    /// Parses the `pw { x < b : f ; x = b : v ; otherwise : g }` syntax.
    #[new]
    #[pyo3(signature = (text, rational = false))]
    fn new(text: &str, rational: bool) -> PyResult<Self> {
        let op = with_domain!(rational, |d| parse_operator(&d, text)).map_err(value_error)?;
        Ok(Piecewise { op, rational })
    }

    /// Builds an operator from `n` breakpoints and `2n + 1` piece expressions.
    #[classmethod]
    #[pyo3(signature = (breakpoints, pieces, rational = false))]
    fn make(
        _cls: &Bound<'_, PyType>,
        breakpoints: Vec<Bound<'_, PyAny>>,
        pieces: Vec<String>,
        rational: bool,
    ) -> PyResult<Self> {
        let json = OperatorJson {
            breakpoints: breakpoints
                .iter()
                .map(|b| breakpoint(b).map(|b| b.to_string()))
                .collect::<PyResult<_>>()?,
            pieces,
        };
        let op = json.to_operator().map_err(value_error)?;
        Ok(Piecewise { op, rational })
    }

    #[getter]
    fn rational(&self) -> bool {
        self.rational
    }

    #[getter]
    fn breakpoints<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.op.breakpoints().iter().map(|b| fraction(py, b)).collect()
    }

    /// The `2n + 1` pieces in partition order.
    #[getter]
    fn pieces(&self) -> Vec<String> {
        self.op.pieces().map(|f| f.to_string()).collect()
    }

    /// Value at `at` as a `Fraction`, or `None` where undefined.
    fn evaluate<'py>(&self, py: Python<'py>, at: &Bound<'py, PyAny>) -> PyResult<Option<Bound<'py, PyAny>>> {
        let at = breakpoint(at)?;
        let v = with_domain!(self.rational, |d| self.op.evaluate(&d, &at)).map_err(value_error)?;
        match v {
            Value::Defined(q) => fraction(py, &Breakpoint::new(q)).map(Some),
            Value::Undefined => Ok(None),
        }
    }

    fn __call__<'py>(&self, py: Python<'py>, at: &Bound<'py, PyAny>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.evaluate(py, at)
    }

    fn canonical(&self) -> PyResult<Self> {
        let op = with_domain!(self.rational, |d| canonical_form(&d, &self.op)).map_err(value_error)?;
        Ok(self.wrap(op))
    }

    fn pseudonormal(&self) -> PyResult<Self> {
        let op = with_domain!(self.rational, |d| pseudonormalform(&d, &self.op)).map_err(value_error)?;
        Ok(self.wrap(op))
    }

    fn refine(&self, points: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let pts = points.iter().map(breakpoint).collect::<PyResult<Vec<_>>>()?;
        Ok(self.wrap(refine(&self.op, &BreakpointSet::from_unsorted(pts))))
    }

    /// True when both denote the same function.
    fn equiv(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        let other = coerce(other)?;
        with_domain!(self.rational || other.rational, |d| equiv_piecewise(&d, &self.op, &other.op))
            .map_err(value_error)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&OperatorJson::from_operator(&self.op)).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.op.len()
    }

    fn __str__(&self) -> PyResult<String> {
        with_domain!(self.rational, |d| print(&d, &self.op)).map_err(value_error)
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!("Piecewise({:?})", self.__str__()?))
    }

    /// Structural equality; use `equiv` for extensional equality.
    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        match other.cast::<Piecewise>() {
            Ok(p) => self.op == p.get().op,
            Err(_) => false,
        }
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.binary(&coerce(other)?, BinaryOp::Add)
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        coerce(other)?.binary(self, BinaryOp::Add)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.binary(&coerce(other)?, BinaryOp::Sub)
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        coerce(other)?.binary(self, BinaryOp::Sub)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.binary(&coerce(other)?, BinaryOp::Mul)
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        coerce(other)?.binary(self, BinaryOp::Mul)
    }

    fn __neg__(&self) -> PyResult<Self> {
        let op = with_domain!(self.rational, |d| neg(&d, &self.op)).map_err(value_error)?;
        Ok(self.wrap(op))
    }

    fn __pow__(&self, k: u32, _modulo: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut acc = self.wrap(PiecewiseOperator::constant(PieceFunction::Expr(
            pwcanon_core::Expr::int(1),
        )));
        for _ in 0..k {
            acc = acc.binary(self, BinaryOp::Mul)?;
        }
        Ok(acc)
    }
}

/// Parses `text` into a [`Piecewise`].
#[pyfunction]
#[pyo3(signature = (text, rational = false))]
fn parse(text: &str, rational: bool) -> PyResult<Piecewise> {
    Piecewise::new(text, rational)
}

/// Canonical form of `text`, printed.
#[pyfunction]
#[pyo3(signature = (text, rational = false))]
fn canonicalize(text: &str, rational: bool) -> PyResult<String> {
    Piecewise::new(text, rational)?.canonical()?.__str__()
}

/// Whether two expressions denote the same function.
#[pyfunction]
#[pyo3(signature = (a, b, rational = false))]
fn equiv(a: &str, b: &str, rational: bool) -> PyResult<bool> {
    let (p, q) = (Piecewise::new(a, rational)?, Piecewise::new(b, rational)?);
    with_domain!(rational, |d| equiv_piecewise(&d, &p.op, &q.op)).map_err(value_error)
}

#[pymodule]
fn pwcanon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Piecewise>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(equiv, m)?)?;
    Ok(())
}
