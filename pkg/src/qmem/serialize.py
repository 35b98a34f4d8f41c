"""JSON channel documents.

Schema: ``{"family": <name>, "params": {...}}`` with family one of

* ``general``   params: ``{"matrix": [[..4 floats..] x 4]}``
* ``mp``        params: ``{"probs": [p0, p1, p2, p3], "mu": float}``
* ``symmetric`` params: ``{"p", "s", "q", "r", "eta", "xi", "gamma"}``
* ``subclass``  params: ``{"p", "q", "r"}``
* ``gaussian``  params: ``{"p1", "sigma", "theta0"?}`` (theta0 defaults to 0;
  non-zero theta0 is rejected here because only the Monte-Carlo estimator
  supports it)
"""

from __future__ import annotations

import json

from .channel import Channel, SubclassParams, SymmetricChannelParams
from .errors import ValidationError
from .gaussian import GaussianModelParams, reduce_to_subclass

__all__ = ["channel_from_doc", "channel_from_json", "parse_channel_doc"]

_FAMILIES = ("general", "mp", "symmetric", "subclass", "gaussian")


def _require(params: dict, keys: tuple[str, ...], family: str) -> list:
    missing = [k for k in keys if k not in params]
    if missing:
        raise ValidationError(f"channel family '{family}' requires params {missing}")
    return [params[k] for k in keys]


def parse_channel_doc(doc: dict):
    """Validate a channel document and return (family, params dict)."""
    if not isinstance(doc, dict):
        raise ValidationError("channel document must be a JSON object")
    family = doc.get("family")
    if family not in _FAMILIES:
        raise ValidationError(f"unknown channel family {family!r}; expected one of {_FAMILIES}")
    params = doc.get("params")
    if not isinstance(params, dict):
        raise ValidationError("channel document must carry a 'params' object")
    return family, params


def channel_from_doc(doc: dict) -> Channel:
    """Build a channel from a parsed JSON document."""
    family, params = parse_channel_doc(doc)
    if family == "general":
        (matrix,) = _require(params, ("matrix",), family)
        return Channel.from_general(matrix)
    if family == "mp":
        probs, mu = _require(params, ("probs", "mu"), family)
        return Channel.from_mp_correlated(probs, mu)
    if family == "symmetric":
        vals = _require(params, ("p", "s", "q", "r", "eta", "xi", "gamma"), family)
        return Channel.from_symmetric(SymmetricChannelParams(*vals))
    if family == "subclass":
        p, q, r = _require(params, ("p", "q", "r"), family)
        return Channel.from_subclass(SubclassParams(p=p, q=q, r=r))
    # gaussian: reduce to the subclass (theta0 must be 0)
    p1, sigma = _require(params, ("p1", "sigma"), family)
    gp = GaussianModelParams(p1=p1, sigma=sigma, theta0=params.get("theta0", 0.0))
    return Channel.from_subclass(reduce_to_subclass(gp))


def channel_from_json(text: str) -> Channel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed channel JSON: {exc}") from exc
    return channel_from_doc(doc)
