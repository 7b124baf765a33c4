"""scikit-learn style wrappers so the computations drop into pipelines and grid sweeps.

Inputs are sequences of ring presentations (``Presentation`` objects or
presentation-file text) or integer parameter rows.  Outputs are numpy
arrays; exact values (rationals, verdict tags) come back in object arrays.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .biquotient import ActionMatrix, family3_ring, formality_obstruction, freeness_check
from .classifier import VerdictTag, classify_dim5, classify_dim6
from .errors import InputError
from .graded import Presentation, QuotientAlgebra, build_quotient
from .minimal_model import build_model
from .presentation_io import parse_presentation


def check_presentations(X) -> list[Presentation]:
    """Coerce a sequence of presentations, texts or quotient algebras to presentations."""
    if isinstance(X, (str, Presentation, QuotientAlgebra)):
        raise InputError("expected a sequence of presentations, got a single one")
    out = []
    for item in X:
        if isinstance(item, Presentation):
            out.append(item)
        elif isinstance(item, QuotientAlgebra):
            out.append(item.presentation)
        elif isinstance(item, str):
            out.append(parse_presentation(item))
        else:
            raise InputError(f"cannot read a presentation from {type(item).__name__}")
    if not out:
        raise InputError("empty input")
    return out


def check_integer_rows(X, ncols: int) -> list[tuple[int, ...]]:
    """Validate a 2-d integer array-like with ``ncols`` columns."""
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2 or arr.shape[1] != ncols:
        raise InputError(f"expected rows of {ncols} integers, got shape {arr.shape}")
    rows = []
    for row in arr:
        vals = []
        for v in row:
            try:
                ok = not isinstance(v, (bool, np.bool_, str)) and int(v) == v
            except (TypeError, ValueError, OverflowError):
                ok = False
            if not ok:
                raise InputError(f"non-integer entry {v!r}")
            vals.append(int(v))
        rows.append(tuple(vals))
    return rows


class MinimalModelTransformer(TransformerMixin, BaseEstimator):
    """Map each ring to its homotopy rank vector ``(rk pi_2, ..., rk pi_max_degree)``."""

    def __init__(self, max_degree: int = 8):
        self.max_degree = max_degree

    def fit(self, X, y=None):
        if int(self.max_degree) < 2:
            raise InputError("max_degree must be at least 2")
        check_presentations(X)
        self.n_features_out_ = self.max_degree - 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = []
        for p in check_presentations(X):
            _, ranks = build_model(p, self.max_degree)
            rows.append(ranks.as_list(2, self.max_degree))
        return np.array(rows, dtype=int).reshape(-1, self.n_features_out_)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"pi_{r}" for r in range(2, self.max_degree + 1)], dtype=object)


class CohomologyClassifier(ClassifierMixin, BaseEstimator):
    """Predict the classification tag of each ring in dimension 5 or 6.

    In dimension 5 only ``b2`` matters; in dimension 6 the full ring is used.
    """

    def __init__(self, dim: int = 6):
        self.dim = dim

    def fit(self, X, y=None):
        if self.dim not in (5, 6):
            raise InputError("dim must be 5 or 6")
        check_presentations(X)
        self.classes_ = np.array([t.value for t in VerdictTag], dtype=object)
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        out = []
        for p in check_presentations(X):
            q = build_quotient(p, max(self.dim, p.default_cap))
            verdict = classify_dim5(q.dim(2)) if self.dim == 5 else classify_dim6(q)
            out.append(verdict.tag.value)
        return np.array(out, dtype=object)


class ObstructionDetector(TransformerMixin, BaseEstimator):
    """Rows ``(b1, c1, c2)`` to the exact obstruction coefficient and verdict."""

    def fit(self, X, y=None):
        check_integer_rows(X, 3)
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        reports = [formality_obstruction(family3_ring(*row)) for row in check_integer_rows(X, 3)]
        return np.array([[r.coefficient] for r in reports], dtype=object)

    def predict(self, X):
        check_is_fitted(self, "n_features_in_")
        rows = check_integer_rows(X, 3)
        return np.array([formality_obstruction(family3_ring(*row)).verdict.value for row in rows], dtype=object)


class FreenessChecker(ClassifierMixin, BaseEstimator):
    """Rows of nine integers ``a1..c3`` to whether the torus action is free."""

    def fit(self, X, y=None):
        check_integer_rows(X, 9)
        self.n_features_in_ = 9
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X: Sequence):
        check_is_fitted(self, "n_features_in_")
        rows = check_integer_rows(X, 9)
        return np.array([freeness_check(ActionMatrix.from_flat(r)).free for r in rows], dtype=bool)
