"""Exact GIT order functions, minimum loci and reduction types on torus apartments.

The package is organised bottom-up:

* :mod:`gitloci.valued_field` -- the valued field (rational-exponent rational functions in ``t``),
* :mod:`gitloci.convex` -- exact piecewise-linear convex analysis and polytopes,
* :mod:`gitloci.apartment` -- the difference function, its minimum locus and reduction types,
* :mod:`gitloci.dynamics` -- endomorphisms of projective space, resultants, the Hesse family,
* :mod:`gitloci.cli` -- the ``gitloci`` command.
"""
from .apartment import (
    ApartmentPoint,
    ReductionClass,
    apartment_min,
    apartment_min_locus,
    classify_reduction,
    delta_on_apartment,
    normalize_config,
    translate_config,
)
from .convex import (
    Location,
    Polytope,
    ValuedWeightConfig,
    conjugate_eval,
    convex_hull,
    lower_hull_value,
    polytope_query,
    polytope_vertices,
    recession_cone_trivial,
    subdiff_zero,
    sublevel_polytope,
    weight_polytopes,
)
from .dynamics import (
    GroupElement,
    HesseVerdict,
    ProjEndomorphism,
    conjugate_map,
    conjugation_weights,
    dim_count,
    divergence_contraction,
    hesse_classify,
    hesse_map,
    map_config,
    min_res_locus,
    ord_res,
    sylvester_resultant,
)
from .errors import DomainError, GitLociError, ParseError
from .valued_field import INF, NEG_INF, FieldElement, T, field_arith, parse_element, residue, valuation

__version__ = "0.1.0"
