from ._core import (
    FlipError,
    Graph,
    GraphError,
    ParseError,
    PathError,
    center_vectors,
    dual_arcs,
    flip,
    fuzz,
    geodesic,
    lambda_from_shear,
    lambda_length,
    matrix_word,
    penner_form_matrix,
    poisson_matrix,
    shear_from_lambda,
    validate,
    verify_flip_identities,
    verify_inverse,
    window_form_matrix,
    windows,
)

__all__ = [name for name in dir() if not name.startswith("_")]
