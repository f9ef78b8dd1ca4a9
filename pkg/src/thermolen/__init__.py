"""Thermodynamic geometry for two-degree-of-freedom systems.

Energy (Weinhold) and entropy (Ruppeiner) metrics from pluggable
equation-of-state models, thermodynamic length by adaptive quadrature,
sound speeds, isothermal work/length identities, metric-degeneracy scans
and variational geodesics.  Hot path integrals run on a compiled kernel
when the extension is available (see thermolen.backend.BACKEND).
"""

from .acoustics import SoundSpeeds, length_via_sound, sound_speeds
from .backend import BACKEND
from .eos import (
    Family,
    LinearCoeffs,
    MaterialState,
    ModelConfig,
    Reference,
    Rep,
    StatePoint,
    convert_state,
    fundamental_energy,
    fundamental_entropy,
    material_at,
    pressure,
    state_from_tv,
    temperature,
)
from .errors import (
    ConfigError,
    DegenerateState,
    DepthExceeded,
    NegativeQuadraticForm,
    NonPhysicalState,
    ThermolenError,
    UnsupportedModel,
)
from .metric import (
    DegeneracyReport,
    MetricTensor2,
    degeneracy_scan,
    det_energy,
    det_entropy,
    energy_metric,
    entropy_metric,
    metric_from_hessian,
    t4_residual,
)
from .pathlen import (
    ConstP,
    ConstS,
    ConstU,
    ConstV,
    ConstVEntropy,
    GeodesicResult,
    Isotherm,
    LengthResult,
    Parametric,
    PathSpec,
    Polyline,
    QuadratureOptions,
    geodesic,
    isotherm_g22_length,
    length,
    length_density,
    path_from_json_dict,
    path_to_json_dict,
)
from .workrel import (
    IsothermSegment,
    WorkLengthReport,
    check_isotherm_pressure_ode,
    check_work_length_energy,
    check_work_length_entropy,
    work_isotherm,
)

__version__ = "0.1.0"
