"""
Text formats: polynomial JSON documents and certificate JSON.

The polynomial document is ``{"coeffs": [[re, im], ...]}`` in ascending
degree; bare numbers are accepted as shorthand for ``[re, 0]``.
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from .poly import Polynomial


class PolynomialFormatError(ValueError):
    """Raised when a polynomial document cannot be parsed."""


def polynomial_to_obj(p: Polynomial) -> dict:
    return {"coeffs": [[c.real, c.imag] for c in p.coeffs]}


def polynomial_from_obj(obj) -> Polynomial:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise PolynomialFormatError('expected an object with a "coeffs" field')
    raw = obj["coeffs"]
    if not isinstance(raw, list) or len(raw) == 0:
        raise PolynomialFormatError('"coeffs" must be a non-empty list')
    coeffs = np.zeros(len(raw), dtype=complex)
    for k, entry in enumerate(raw):
        if isinstance(entry, (int, float)):
            coeffs[k] = float(entry)
        elif (
            isinstance(entry, list)
            and len(entry) == 2
            and all(isinstance(x, (int, float)) for x in entry)
        ):
            coeffs[k] = complex(entry[0], entry[1])
        else:
            raise PolynomialFormatError(
                f"coefficient {k} must be a number or a [re, im] pair"
            )
    return Polynomial(coeffs)


def dump_polynomial(p: Polynomial, path) -> None:
    with open(path, "w") as fh:
        json.dump(polynomial_to_obj(p), fh)
        fh.write("\n")


def load_polynomial(path) -> Polynomial:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PolynomialFormatError(f"invalid JSON: {exc}") from exc
    return polynomial_from_obj(obj)


def certificate_to_obj(cert) -> dict:
    return dataclasses.asdict(cert)


def dump_certificate(cert, path) -> None:
    with open(path, "w") as fh:
        json.dump(certificate_to_obj(cert), fh, indent=2)
        fh.write("\n")
