"""Input validation helpers shared by the detector estimators."""

from __future__ import annotations

from typing import Sequence

from .corpus import Snapshot, TokenStream


def check_snapshot(X) -> Snapshot:
    if not isinstance(X, Snapshot):
        raise TypeError(f"expected a Snapshot, got {type(X).__name__}")
    return X


def check_tokens(X) -> list[str]:
    if isinstance(X, TokenStream):
        return list(X.tokens)
    if isinstance(X, Sequence) and not isinstance(X, (str, bytes)):
        tokens = list(X)
        if not all(isinstance(t, str) for t in tokens):
            raise TypeError("token sequences must contain strings")
        return tokens
    raise TypeError("expected a TokenStream or a sequence of string tokens")


def check_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise RuntimeError(
            f"{type(estimator).__name__} is not fitted; call fit() first"
        )
