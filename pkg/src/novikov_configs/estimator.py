"""scikit-learn style front end: cocycle complexes in, per-degree invariants out."""

from __future__ import annotations

import os
from collections.abc import Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cocycle import CocycleComplex, ComplexFormatError, load_complex, parse_complex, validate
from .configurations import Analysis, analyze
from .cover import WindowSpec
from .values import ValueVector


def check_complex(X, prime: int | None = None) -> CocycleComplex:
    """Coerce one input to a validated :class:`CocycleComplex`.

    Accepts a complex, a parsed JSON mapping, a JSON string or a file path.
    Raises ``ValueError`` when the cocycle fails validation.
    """
    if isinstance(X, CocycleComplex):
        cx = X
    elif isinstance(X, Mapping):
        cx = parse_complex(X)
    elif isinstance(X, (str, bytes, os.PathLike)):
        text = X.decode() if isinstance(X, bytes) else str(X)
        cx = parse_complex(text) if text.lstrip().startswith("{") else load_complex(text)
    else:
        raise TypeError(f"cannot read a cocycle complex from {type(X).__name__}")
    if prime is not None and prime != cx.field_prime:
        cx = cx.with_prime(prime)
    report = validate(cx)
    if not report.passed:
        reasons = report.messages + [f"non-generic edge {v['edge']}: {v['reason']}"
                                     for v in report.genericity_violations]
        if report.triangle_violations:
            reasons.append(f"cocycle condition fails on {report.triangle_violations[0]}")
        raise ValueError("invalid cocycle complex: " + "; ".join(reasons))
    return cx


def check_complexes(X, prime: int | None = None) -> list[CocycleComplex]:
    """Like :func:`check_complex` for a single item or a sequence of them."""
    single = (CocycleComplex, Mapping, str, bytes, os.PathLike)
    items = [X] if isinstance(X, single) else list(X)
    if not items:
        raise ValueError("expected at least one cocycle complex")
    return [check_complex(x, prime) for x in items]


class NovikovConfigurations(BaseEstimator, TransformerMixin):
    """Compute delta/gamma configurations and Novikov-Betti numbers.

    ``fit`` analyzes the training complexes and fixes the degree range;
    ``transform`` maps each complex to the row
    ``[beta_0, rank d_0, beta_1, rank d_1, ...]`` over that range.

    Parameters
    ----------
    prime : int or None
        Field characteristic; None keeps the one declared in each input.
    degrees : sequence of int or None
        Degrees to compute; None means 0 .. max dimension seen in ``fit``.
    window_lo, window_hi, margin : float or None
        Value window overrides (decimals read with the input's generators).
    """

    def __init__(self, prime=None, degrees=None, window_lo=None, window_hi=None, margin=None):
        self.prime = prime
        self.degrees = degrees
        self.window_lo = window_lo
        self.window_hi = window_hi
        self.margin = margin

    def _spec(self, cx: CocycleComplex) -> WindowSpec:
        n = cx.generators.n

        def conv(x):
            return None if x is None else ValueVector.of(str(x), (0,) * n)

        lo, hi = conv(self.window_lo), conv(self.window_hi)
        if lo is not None and hi is not None and cx.generators.compare(lo, hi) >= 0:
            raise ValueError("window_lo must be below window_hi")
        return WindowSpec(lo, hi, conv(self.margin))

    def _analyze(self, cx: CocycleComplex) -> Analysis:
        degs = [r for r in self.degrees_ if r <= cx.dim]
        return analyze(cx, self._spec(cx), degs, literal=False)

    def fit(self, X, y=None):
        complexes = check_complexes(X, self.prime)
        if self.degrees is not None:
            degs = sorted(set(int(r) for r in self.degrees))
            if any(r < 0 for r in degs):
                raise ValueError("degrees must be non-negative")
        else:
            degs = list(range(max(cx.dim for cx in complexes) + 1))
        self.degrees_ = degs
        self.analyses_ = [self._analyze(cx) for cx in complexes]
        self.n_features_out_ = 2 * len(degs)
        return self

    def _row(self, an: Analysis) -> list[int]:
        row = []
        for r in self.degrees_:
            res = an.results.get(r)
            row.extend([res.betti_top, res.rank_d] if res is not None else [0, 0])
        return row

    def transform(self, X):
        check_is_fitted(self, "degrees_")
        complexes = check_complexes(X, self.prime)
        return np.array([self._row(self._analyze(cx)) for cx in complexes], dtype=np.int64)

    def fit_transform(self, X, y=None, **fit_params):
        self.fit(X)
        return np.array([self._row(an) for an in self.analyses_], dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "degrees_")
        return np.array([f"{name}_{r}" for r in self.degrees_ for name in ("betti", "rank_d")],
                        dtype=object)

    def configurations(self, index: int = 0) -> dict:
        """JSON view of the fitted configurations of training complex ``index``."""
        check_is_fitted(self, "analyses_")
        return self.analyses_[index].to_json()


__all__ = ["NovikovConfigurations", "check_complex", "check_complexes", "ComplexFormatError"]
