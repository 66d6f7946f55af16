"""Adaptive cubature over the standard fundamental domain against dx dy / y^2.

The domain {|x| <= 1/2, |z| >= 1, y <= y_max} is split into a corner piece
sqrt(1-x^2) <= y <= 1, mapped to a rectangle by y = h(x) + t (1 - h(x)), and
a strip 1 <= y <= y_max.  Each cell carries a 7x7 Gauss-Legendre value and the
two values obtained by halving it in x or in y (each half with its own 7x7
rule); the larger discrepancy is the cell's error and decides the split
direction.  Integrands are called on
whole numpy batches of points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureBudgetError, WeightMismatchError
from .geometry import HPoint

NODES, WEIGHTS = np.polynomial.legendre.leggauss(7)
DEFAULT_BUDGET = 10_000_000
EVAL_CHUNK = 1 << 15


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    cells_used: int
    y_cutoff: float
    evaluations: int = 0

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be non-negative")

    @property
    def real(self):
        return self.value.real


def _rule(x0, x1, t0, t1):
    """Tensor nodes and weights (in the cell's own coordinates) for many cells at once."""
    hx = (x1 - x0) / 2
    ht = (t1 - t0) / 2
    xs = (x0 + x1)[:, None] / 2 + hx[:, None] * NODES[None, :]
    ts = (t0 + t1)[:, None] / 2 + ht[:, None] * NODES[None, :]
    X = np.repeat(xs, 7, axis=1)
    Tt = np.tile(ts, (1, 7))
    W = np.outer(WEIGHTS, WEIGHTS).ravel()[None, :] * (hx * ht)[:, None]
    return X, Tt, W


class _Integrator:
    def __init__(self, integrand, y_max, budget):
        self.f = integrand
        self.y_max = y_max
        self.budget = budget
        self.evals = 0

    def _eval(self, region, x0, x1, t0, t1):
        """7x7 values for cells given as arrays; region 0 = corner, 1 = strip."""
        X, Tt, W = _rule(x0, x1, t0, t1)
        if region == 0:
            h = np.sqrt(1 - X * X)
            Y = h + Tt * (1 - h)
            W = W * (1 - h)
        else:
            Y = Tt
        shape = X.shape
        self.evals += X.size
        if self.evals > self.budget:
            raise QuadratureBudgetError(f"more than {self.budget} integrand evaluations")
        xs, ys = X.ravel(), Y.ravel()
        # bounded batches: Fourier-series integrands allocate (points x terms) arrays
        vals = np.concatenate([np.asarray(self.f(xs[i : i + EVAL_CHUNK], ys[i : i + EVAL_CHUNK]), dtype=complex).ravel() for i in range(0, xs.size, EVAL_CHUNK)])
        return np.sum(vals.reshape(shape) * W / (Y * Y), axis=1)

    def measure(self, region, cells):
        """For each cell (x0,x1,t0,t1): its two x-halves and its two t-halves, each a full 7x7 rule."""
        c = np.asarray(cells, dtype=float)
        x0, x1, t0, t1 = c.T
        xm = (x0 + x1) / 2
        tm = (t0 + t1) / 2
        # order: x-left, x-right, t-low, t-high
        hx0 = np.concatenate([x0, xm, x0, x0])
        hx1 = np.concatenate([xm, x1, x1, x1])
        ht0 = np.concatenate([t0, t0, t0, tm])
        ht1 = np.concatenate([t1, t1, tm, t1])
        return self._eval(region, hx0, hx1, ht0, ht1).reshape(4, -1)


def _initial_cells(y_max):
    xs = np.linspace(-0.5, 0.5, 5)
    corner = [(xs[i], xs[i + 1], 0.0, 1.0) for i in range(4)]
    ys = [1.0]
    while ys[-1] < y_max:
        ys.append(min(y_max, ys[-1] * 1.5 if ys[-1] < 4 else ys[-1] * 2))
    strip = [(xs[i], xs[i + 1], ys[j], ys[j + 1]) for j in range(len(ys) - 1) for i in range(4)]
    return corner, strip


def integrate_fd(integrand, tol=1e-8, y_max=10.0, tail_bound=0.0, abs_tol=0.0, budget=DEFAULT_BUDGET, vectorized=True):
    """Integrate ``integrand`` over Gamma\\H against dmu = dx dy / y^2.

    ``integrand(x, y)`` receives float arrays and returns real or complex
    arrays; with ``vectorized=False`` it is called on single HPoints.
    Refinement stops once the summed cell errors are below
    max(tol |value|, abs_tol).  ``tail_bound`` (the caller's bound for the
    region y > y_max) is added to the reported error.
    """
    if not vectorized:
        scalar = integrand

        def integrand(x, y):
            return np.array([complex(scalar(HPoint(float(a), float(b)))) for a, b in zip(x, y)])

    if y_max < 1:
        raise ValueError("y_max must be at least 1")
    ig = _Integrator(integrand, y_max, budget)
    corner, strip = _initial_cells(y_max)

    # cells[id] = (region, bounds, value, error, split_in_x, x-halves, y-halves)
    cells = {}
    next_id = 0

    def add_cells(region, bounds_list, q_parent=None):
        nonlocal next_id
        if not bounds_list:
            return []
        quarters = ig.measure(region, bounds_list)
        ids = []
        for i, bnd in enumerate(bounds_list):
            qs = quarters[:, i]
            cid = next_id
            next_id += 1
            if q_parent is None:
                q_full = ig._eval(region, *[np.array([v]) for v in bnd])[0]
            else:
                q_full = q_parent[i]
            qx = (qs[0], qs[1])  # x-halves
            qy = (qs[2], qs[3])  # t-halves
            ex = abs(qx[0] + qx[1] - q_full)
            ey = abs(qy[0] + qy[1] - q_full)
            split_x = ex >= ey
            value = qx[0] + qx[1] if split_x else qy[0] + qy[1]
            cells[cid] = (region, bnd, value, max(ex, ey), split_x, qx, qy)
            ids.append(cid)
        return ids

    add_cells(0, corner)
    add_cells(1, strip)

    def totals():
        ids = sorted(cells)
        re = math.fsum(cells[i][2].real for i in ids)
        im = math.fsum(cells[i][2].imag for i in ids)
        err = math.fsum(cells[i][3] for i in ids)
        return complex(re, im), err

    value, err = totals()
    while err > max(tol * abs(value), abs_tol):
        # refine the largest-error cells that together hold half the error
        order = sorted(cells, key=lambda i: (-cells[i][3], i))
        chosen, acc = [], 0.0
        for i in order:
            chosen.append(i)
            acc += cells[i][3]
            if acc >= err / 2:
                break
        for region in (0, 1):
            kids, parent_q = [], []
            for i in chosen:
                if cells[i][0] != region:
                    continue
                _, (x0, x1, t0, t1), _, _, split_x, qx, qy = cells[i]
                if split_x:
                    xm = (x0 + x1) / 2
                    kids += [(x0, xm, t0, t1), (xm, x1, t0, t1)]
                    parent_q += [qx[0], qx[1]]
                else:
                    tm = (t0 + t1) / 2
                    kids += [(x0, x1, t0, tm), (x0, x1, tm, t1)]
                    parent_q += [qy[0], qy[1]]
            for i in chosen:
                if cells[i][0] == region:
                    del cells[i]
            chosen = [i for i in chosen if i in cells]
            add_cells(region, kids, parent_q)
        value, err = totals()
    return QuadratureResult(value, err + float(tail_bound), len(cells), float(y_max), ig.evals)


def petersson(F, G, tol=1e-8, y_max=None, abs_tol=0.0, budget=DEFAULT_BUDGET, multiplier=None):
    """<F, G> = int F conj(G) dmu for two forms of equal weight.

    ``multiplier`` (an optional weight-0 array function of x, y) is included
    in the integrand, as in <phi F, G>.
    """
    if getattr(F, "weight", None) != getattr(G, "weight", None) and multiplier is None:
        raise WeightMismatchError(f"weights {F.weight} and {G.weight} differ")
    if y_max is None:
        y_max = max(getattr(F, "default_y_max", 10.0), getattr(G, "default_y_max", 10.0))

    def integrand(x, y):
        v = F.evaluate_array(x, y) * np.conj(G.evaluate_array(x, y))
        if multiplier is not None:
            v = v * multiplier(x, y)
        return v

    tail = 0.0
    if multiplier is None and hasattr(F, "tail_mass") and hasattr(G, "tail_mass"):
        # Cauchy-Schwarz on the region y > y_max
        tail = math.sqrt(F.tail_mass(y_max) * G.tail_mass(y_max))
    res = integrate_fd(integrand, tol=tol, y_max=y_max, tail_bound=tail, abs_tol=abs_tol, budget=budget)
    return res
