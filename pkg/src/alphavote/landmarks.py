"""Landmark detection on sweep curves.

A landmark is a distinguished point of an expected-increment curve:
its maximum or minimum over the sweep, the position where it crosses a
level (zero by default), or the position where two curves cross each
other.

Crossing detection works on the sign of the relevant difference with
values within ``atol`` of zero treated as exactly zero.  Sweep curves
are often flat at machine-epsilon scale near degenerate compositions,
and without the snap a difference of order 1e-18 would register as a
sign change.  The reported ``x`` is the first sweep position on the far
side of the crossing; ``value`` carries the linearly interpolated
crossing coordinate, which is generally fractional.
"""

from __future__ import annotations

from dataclasses import dataclass

KINDS = ("argmax", "argmin", "zero_crossing", "curve_crossing")
_ROLE_NAMES = ("group1", "group2", "egoist", "random")


@dataclass(frozen=True)
class LandmarkRequest:
    """What to look for: a kind plus the role curve(s) it concerns.

    ``roles`` has one entry except for ``curve_crossing``, which takes
    the two curves to compare.  ``level`` shifts ``zero_crossing`` to a
    nonzero reference value.
    """

    kind: str
    roles: tuple[str, ...]
    level: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown landmark kind {self.kind!r}")
        object.__setattr__(self, "roles", tuple(self.roles))
        expected = 2 if self.kind == "curve_crossing" else 1
        if len(self.roles) != expected:
            raise ValueError(
                f"{self.kind} takes {expected} role(s), got {len(self.roles)}")
        for role in self.roles:
            if role not in _ROLE_NAMES:
                raise ValueError(f"unknown role {role!r}")


@dataclass(frozen=True)
class Landmark:
    """A found landmark: position (sweep value) and associated value."""

    kind: str
    roles: tuple[str, ...]
    x: int
    value: float


def _series(results, role):
    """(x, value) pairs for one role, skipping rows where it is absent."""
    pts = []
    for r in results:
        y = r.increments.role(role)
        if y is not None:
            pts.append((r.x, y))
    return pts


def _sign(d: float, atol: float) -> int:
    if abs(d) <= atol:
        return 0
    return 1 if d > 0.0 else -1


def _sign_flips(diffs, atol):
    """Index pairs (j, i) of every sign change, in order."""
    flips = []
    last_idx = None
    for i, d in enumerate(diffs):
        s = _sign(d, atol)
        if s == 0:
            continue
        if last_idx is not None and s != _sign(diffs[last_idx], atol):
            flips.append((last_idx, i))
        last_idx = i
    return flips


def detect_landmarks(results, requests, atol: float = 1e-12) -> list[Landmark]:
    """Locate the requested landmarks on a sweep's curves.

    ``results`` is a sweep result list; ``requests`` an iterable of
    LandmarkRequest.  A crossing request yields one landmark per sign
    change, in sweep order; requests whose feature does not occur (a
    crossing that never happens, a role absent from every row) yield no
    entry.  Ties in argmax/argmin resolve to the smallest x.
    """
    found = []
    for req in requests:
        pts = _series(results, req.roles[0])
        if not pts:
            continue
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        if req.kind in ("argmax", "argmin"):
            best = max(ys) if req.kind == "argmax" else min(ys)
            idx = ys.index(best)
            found.append(Landmark(req.kind, req.roles, xs[idx], best))
            continue
        if req.kind == "zero_crossing":
            diffs = [y - req.level for y in ys]
        else:
            other = dict(_series(results, req.roles[1]))
            paired = [(x, y - other[x]) for x, y in pts if x in other]
            if not paired:
                continue
            xs = [p[0] for p in paired]
            diffs = [p[1] for p in paired]
        for j, i in _sign_flips(diffs, atol):
            dj, di = diffs[j], diffs[i]
            cross = xs[j] + dj * (xs[i] - xs[j]) / (dj - di)
            found.append(Landmark(req.kind, req.roles, xs[i], cross))
    return found


def parse_landmark_request(text: str) -> LandmarkRequest:
    """Parse the compact request syntax used on the command line.

    Formats: ``ROLE:argmax``, ``ROLE:argmin``, ``ROLE:zero``,
    ``ROLE:zero@LEVEL``, and ``ROLE-ROLE:crossing``.
    """
    head, sep, tail = text.strip().partition(":")
    if not sep or not head or not tail:
        raise ValueError(f"malformed landmark request {text!r}")
    if tail in ("argmax", "argmin"):
        return LandmarkRequest(kind=tail, roles=(head,))
    if tail == "zero" or tail.startswith("zero@"):
        level = 0.0
        if tail.startswith("zero@"):
            try:
                level = float(tail[5:])
            except ValueError:
                raise ValueError(f"bad level in landmark request {text!r}") from None
        return LandmarkRequest(kind="zero_crossing", roles=(head,), level=level)
    if tail == "crossing":
        roles = tuple(head.split("-"))
        if len(roles) != 2:
            raise ValueError(
                f"crossing requests take two roles as ROLE-ROLE, got {text!r}")
        return LandmarkRequest(kind="curve_crossing", roles=roles)
    raise ValueError(f"unknown landmark kind in request {text!r}")
