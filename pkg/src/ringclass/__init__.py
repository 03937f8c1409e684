"""Ring class fields of quadratic fields and multiplicities of cubic discriminants."""

from .conductor import admissible_conductors, decompose, factorization, is_admissible
from .cubicenum import brute_force_oracle, enumerate_fields, enumerate_forms
from .errors import InadmissibleError, NonFundamentalError, ResourceError
from .multiplicity import MultipletPrediction, predict
from .quadclass import class_group, quadratic_field, rho3, selmer_rank
from .selmer import ring_class_rank, ring_space, selmer_basis

__all__ = [
    "InadmissibleError", "MultipletPrediction", "NonFundamentalError", "ResourceError",
    "admissible_conductors", "brute_force_oracle", "class_group", "decompose",
    "enumerate_fields", "enumerate_forms", "factorization", "is_admissible", "predict",
    "quadratic_field", "rho3", "ring_class_rank", "ring_space", "selmer_basis",
    "selmer_rank",
]

__version__ = "0.1.0"
