"""Dual Garside (band generator) structure of braid groups.

Normal forms and the word problem, fiberedness certificates for closures of
braids whose normal form starts with a positive δ-power, Hopf-plumbed basket
conversions, and link invariants used as independent cross-checks.
"""

from __future__ import annotations

from .baskets import (
    Basket,
    DeltaBasket,
    DeltaForm,
    Espalier,
    FoldingStructure,
    basket_to_braid,
    braid_to_basket,
    braid_to_folding,
    classify_bandword,
    folding_to_braid,
    generator_set,
    make_espalier,
    path_espalier,
    positive_artin_to_delta_form,
    y_espalier,
)
from .braid import (
    BandGenerator,
    BraidWord,
    Letter,
    Permutation,
    band_to_artin,
    concat,
    conjugate,
    cyclic_shift,
    exponent_sum,
    format_word,
    invert,
    letter,
    parse_word,
    subword,
    underlying_permutation,
)
from .errors import BraidError, BraidSyntaxError, BudgetExhausted, SplitClosureError, StrandMismatchError
from .fibering import (
    DeltaSearch,
    DeltaWitness,
    FiberednessCertificate,
    add_fibering_crossings,
    cancel_square,
    check_delta_witness,
    delta_window,
    fiberedness_certificate,
    find_delta_subword,
    verify_certificate,
    yn_bandword,
    yn_delta_criterion,
)
from .garside import (
    CanonicalFactor,
    NormalForm,
    canonical_length,
    complements,
    cycling,
    factor_of_generator,
    factor_of_polygon,
    factor_product_if_simple,
    finishing_set,
    infimum,
    is_sqp_braid,
    is_sqp_word,
    left_complement,
    left_divides,
    meet,
    normal_form,
    parse_normal_form,
    right_complement,
    right_divides,
    starting_set,
    summit_infimum,
    tau,
    words_equal,
)
from .invariants import (
    ClosureSummary,
    LaurentPolynomial,
    MonicVerdict,
    alexander_polynomial,
    bennequin_genus_bound,
    closure_summary,
    monic_obstruction,
    parse_polynomial,
    reduced_burau,
)
from .render import render

__version__ = "0.1.0"
