"""Left-invariant geometry on 3D Lie groups and the soliton search.

A family is a bracket table c[i][j][k] (coefficient of e_k in [e_i, e_j])
together with a diagonal left-invariant metric diag(d1, d2, d3) in that frame
and a constant exponentiated dilaton weight e^{2 phi}.  The Koszul formula

    2 <nabla_{e_i} e_j, e_k> = <[e_i,e_j], e_k> - <[e_j,e_k], e_i>
                               + <[e_k,e_i], e_j>

gives constant connection coefficients, from which curvature and its first
covariant derivatives follow algebraically; the packets then feed the same
field-equation residuals used for coordinate charts.  Everything is exact
when the inputs are rational.

The search side wraps the residual norms into a damped least-squares solve
over (shape parameter, log e^{2 phi}) and a grid scan for empirical
exclusion tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .charts import DerivativePacket, GeometryPacket, _freeze, _zeros
from .curvature3 import Curv3, Metric3, Sym2, TWO_FORM_BASIS, eigenreport
from .errors import JacobiViolated, NonpositiveDilaton, SingularMetric
from .soliton import SolitonParams, SolitonResidual, residual_from_packets


@dataclass(frozen=True)
class LieFamily:
    """Bracket table + diagonal metric + constant dilaton weight."""

    name: str
    c: tuple       # c[i][j][k], antisymmetric in (i, j)
    diag: tuple    # (d1, d2, d3), all positive
    e2phi: object  # e^{2 phi} > 0

    def __post_init__(self):
        c = self.c
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    if c[i][j][k] != -c[j][i][k]:
                        raise JacobiViolated(
                            f"bracket table not antisymmetric at ({i},{j},{k})")
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        acc = 0
                        for m in range(3):
                            acc = acc + c[i][j][m] * c[m][k][l] \
                                      + c[j][k][m] * c[m][i][l] \
                                      + c[k][i][m] * c[m][j][l]
                        if acc != 0:
                            raise JacobiViolated(
                                f"Jacobi identity fails at ({i},{j},{k},{l}): {acc}")
        if not all(d > 0 for d in self.diag):
            raise SingularMetric(f"diagonal metric entries must be positive: {self.diag}")
        if not self.e2phi > 0:
            raise NonpositiveDilaton(f"e^(2 phi) must be positive, got {self.e2phi}")

    def bracket(self, i: int, j: int) -> tuple:
        return tuple(self.c[i][j][k] for k in range(3))


def _table(entries) -> tuple:
    """Build an antisymmetric bracket table from {(i, j, k): value}, i < j."""
    c = _zeros(3, 3, 3)
    for (i, j, k), v in entries.items():
        c[i][j][k] = v
        c[j][i][k] = -v
    return _freeze(c)


def family_abelian(e2phi, diag=(1, 1, 1)) -> LieFamily:
    return LieFamily("abelian", _table({}), tuple(diag), e2phi)


def family_heisenberg(a, e2phi, diag=(1, 1, 1)) -> LieFamily:
    """[e1, e2] = a e3, center e3."""
    return LieFamily("heisenberg", _table({(0, 1, 2): a}), tuple(diag), e2phi)


def family_hyperbolic_solvable(a, e2phi, diag=(1, 1, 1)) -> LieFamily:
    """[e1, e2] = a e2, [e1, e3] = a e3: constant curvature -a^2."""
    return LieFamily("hyperbolic-solvable",
                     _table({(0, 1, 1): a, (0, 2, 2): a}), tuple(diag), e2phi)


def family_su2_milnor(a, e2phi, diag=(1, 1, 1)) -> LieFamily:
    """Cyclic brackets [e1, e2] = a e3 etc.; round metric for equal a."""
    return LieFamily("su2-milnor",
                     _table({(0, 1, 2): a, (1, 2, 0): a, (2, 0, 1): a}),
                     tuple(diag), e2phi)


CATALOGUE = {
    "abelian": {
        "builder": family_abelian,
        "takes_shape": False,
        "description": "flat data; every weight leaves a positive residual",
        "shape_bounds": (0.1, 4.0),
        "e2phi_bounds": (1.0, 100.0),
    },
    "heisenberg": {
        "builder": family_heisenberg,
        "takes_shape": True,
        "description": "nilpotent, Ricci eigenvalues (-a^2/2, -a^2/2, a^2/2)",
        "shape_bounds": (0.1, 4.0),
        "e2phi_bounds": (1.0, 100.0),
    },
    "hyperbolic-solvable": {
        "builder": family_hyperbolic_solvable,
        "takes_shape": True,
        "description": "constant curvature -a^2; carries the soliton at kappa a^2 = 4",
        "shape_bounds": (0.5, 4.0),
        "e2phi_bounds": (1.0, 100.0),
    },
    "su2-milnor": {
        "builder": family_su2_milnor,
        "takes_shape": True,
        "description": "compact type, Ricci = (a^2/2) g",
        "shape_bounds": (0.1, 4.0),
        "e2phi_bounds": (1.0, 100.0),
    },
}


def build_family(name: str, shape, e2phi, diag=(1, 1, 1),
                 catalogue=None) -> LieFamily:
    cat = CATALOGUE if catalogue is None else catalogue
    if name not in cat:
        raise KeyError(f"unknown family {name!r}; known: {sorted(cat)}")
    entry = cat[name]
    if entry["takes_shape"]:
        return entry["builder"](shape, e2phi, diag)
    return entry["builder"](e2phi, diag)


CATALOGUE_SCHEMA = "hetsol-catalogue/1"

_BASE_TABLES = {
    "abelian": {},
    "heisenberg": {(0, 1, 2): 1},
    "hyperbolic-solvable": {(0, 1, 1): 1, (0, 2, 2): 1},
    "su2-milnor": {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1},
}


def catalogue_as_dict() -> dict:
    """Serializable catalogue: bracket tables at shape 1, scaled linearly."""
    from .util import rat_str

    families = {}
    for name, e in CATALOGUE.items():
        table = _table(_BASE_TABLES[name])
        families[name] = {
            "description": e["description"],
            "takes_shape": e["takes_shape"],
            "table": [[[rat_str(x) for x in row] for row in plane]
                      for plane in table],
            "shape_bounds": list(e["shape_bounds"]),
            "e2phi_bounds": list(e["e2phi_bounds"]),
        }
    return {"schema": CATALOGUE_SCHEMA, "families": families}


def catalogue_from_dict(doc: dict) -> dict:
    """Load a catalogue document into builder entries usable by the search.

    Each family's bracket table (given at shape 1) scales linearly with the
    shape parameter; validation happens at family construction.
    """
    from fractions import Fraction

    if doc.get("schema") != CATALOGUE_SCHEMA:
        raise ValueError(f"expected schema {CATALOGUE_SCHEMA!r}, "
                         f"got {doc.get('schema')!r}")
    out = {}
    for name, entry in doc["families"].items():
        raw = entry["table"]
        base = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane)
                     for plane in raw)
        takes_shape = bool(entry["takes_shape"])

        def make_builder(fam_name, fam_base, with_shape):
            if with_shape:
                def build(shape, e2phi, diag=(1, 1, 1)):
                    c = tuple(tuple(tuple(shape * x for x in row)
                                    for row in plane) for plane in fam_base)
                    return LieFamily(fam_name, c, tuple(diag), e2phi)
            else:
                def build(e2phi, diag=(1, 1, 1)):
                    return LieFamily(fam_name, fam_base, tuple(diag), e2phi)
            return build

        out[name] = {
            "builder": make_builder(name, base, takes_shape),
            "takes_shape": takes_shape,
            "description": entry.get("description", ""),
            "shape_bounds": tuple(float(x) for x in entry["shape_bounds"]),
            "e2phi_bounds": tuple(float(x) for x in entry["e2phi_bounds"]),
        }
    return out


# ---------------------------------------------------------------------------
# Frame geometry


def lie_geometry(fam: LieFamily):
    """(GeometryPacket, DerivativePacket) in the left-invariant frame.

    All dilaton derivative entries are zero: a left-invariant dilaton on a
    connected group is constant.  Exact for rational inputs.
    """
    from fractions import Fraction

    d = fam.diag
    c = fam.c
    g = Metric3(Sym2.diag(*d))
    half = Fraction(1, 2)

    gamma = _zeros(3, 3, 3)   # gamma[m][i][j] = <nabla_{e_i} e_j, e_m> / d_m
    for i in range(3):
        for j in range(3):
            for k in range(3):
                low = half * (c[i][j][k] * d[k] - c[j][k][i] * d[i] + c[k][i][j] * d[j])
                gamma[k][i][j] = low / d[k]

    rup = _zeros(3, 3, 3, 3)  # coefficient of e_l in R(e_i, e_j) e_k
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    acc = 0
                    for m in range(3):
                        acc = acc + gamma[m][j][k] * gamma[l][i][m] \
                                  - gamma[m][i][k] * gamma[l][j][m] \
                                  - c[i][j][m] * gamma[l][m][k]
                    rup[i][j][k][l] = acc
    r4 = _zeros(3, 3, 3, 3)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    r4[i][j][k][l] = rup[i][j][k][l] * d[l]

    m2 = [[r4[TWO_FORM_BASIS[a][0]][TWO_FORM_BASIS[a][1]]
           [TWO_FORM_BASIS[b][0]][TWO_FORM_BASIS[b][1]] for b in range(3)]
          for a in range(3)]
    curv = Curv3(m2, g)

    ric_m = [[sum(r4[cc][a][b][cc] / d[cc] for cc in range(3))
              for b in range(3)] for a in range(3)]
    ric = Sym2.from_matrix(ric_m)
    scal = sum(ric_m[a][a] / d[a] for a in range(3))

    # first covariant derivative of the curvature (components are constant,
    # so only connection corrections survive)
    nr = _zeros(3, 3, 3, 3, 3)
    for a in range(3):
        for b in range(3):
            for cc in range(3):
                for dd in range(3):
                    for ee in range(3):
                        acc = 0
                        for m in range(3):
                            acc = acc - gamma[m][a][b] * r4[m][cc][dd][ee] \
                                      - gamma[m][a][cc] * r4[b][m][dd][ee] \
                                      - gamma[m][a][dd] * r4[b][cc][m][ee] \
                                      - gamma[m][a][ee] * r4[b][cc][dd][m]
                        nr[a][b][cc][dd][ee] = acc
    div_curv = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                div_curv[v1][v2][v3] = -sum(nr[a][a][v1][v2][v3] / d[a]
                                            for a in range(3))

    nric = _zeros(3, 3, 3)
    for a in range(3):
        for b in range(3):
            for cc in range(3):
                acc = 0
                for m in range(3):
                    acc = acc - gamma[m][a][b] * ric_m[m][cc] \
                              - gamma[m][a][cc] * ric_m[b][m]
                nric[a][b][cc] = acc
    ric_ext = _zeros(3, 3, 3)
    for u in range(3):
        for w in range(3):
            for z in range(3):
                ric_ext[u][w][z] = nric[u][w][z] - nric[w][u][z]

    zero = 0 * scal
    gp = GeometryPacket((zero, zero, zero), g, _freeze(gamma), curv, ric, scal)
    dp = DerivativePacket((zero, zero, zero), Sym2.zero(), zero, zero,
                          _freeze(div_curv), _freeze(ric_ext), (zero, zero, zero))
    return gp, dp


def frame_bianchi_residual(fam: LieFamily):
    """div_curv(v1,v2,v3) - ric_exterior(v2,v3,v1), all 27 frame entries."""
    _gp, dp = lie_geometry(fam)
    out = _zeros(3, 3, 3)
    for v1 in range(3):
        for v2 in range(3):
            for v3 in range(3):
                out[v1][v2][v3] = dp.div_curv[v1][v2][v3] - dp.ric_exterior[v2][v3][v1]
    return _freeze(out)


def soliton_residual(fam: LieFamily, params: SolitonParams) -> SolitonResidual:
    gp, dp = lie_geometry(fam)
    return residual_from_packets(gp, dp, params, fam.e2phi)


def soliton_objective(fam: LieFamily, params: SolitonParams):
    """|E|^2 + |YM|^2 + D^2 with the determinant-metric norms."""
    r = soliton_residual(fam, params)
    return r.e_norm_sq + r.ym_norm_sq + r.d_norm_sq


# ---------------------------------------------------------------------------
# Damped least-squares search


@dataclass(frozen=True)
class SearchConfig:
    initial: tuple            # (shape, e2phi)
    tol: float = 1e-12
    max_iter: int = 200
    damping: float = 1e-3
    damping_up: float = 10.0
    damping_down: float = 10.0
    fd_step: float = 1e-6
    step_tol: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("need at least one iteration")
        if not (self.initial[1] > 0):
            raise NonpositiveDilaton("initial e^(2 phi) must be positive")


@dataclass(frozen=True)
class SearchReport:
    family: str
    kappa: float
    status: str               # "converged" | "max-iterations"
    iterations: int
    shape: float
    e2phi: float
    objective: float
    step_norm: float
    events: tuple
    scal: float
    ricci_eigenvalues: tuple
    classification_defects: tuple  # (|s + 24/kappa|, |e2phi - 48/kappa|)

    @property
    def converged(self) -> bool:
        return self.status == "converged"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "kappa": self.kappa,
            "status": self.status,
            "iterations": self.iterations,
            "shape": self.shape,
            "e2phi": self.e2phi,
            "objective": self.objective,
            "step_norm": self.step_norm,
            "events": list(self.events),
            "scal": self.scal,
            "ricci_eigenvalues": list(self.ricci_eigenvalues),
            "classification_defects": list(self.classification_defects),
        }


def _residual_vector(name: str, shape: float, u: float, params: SolitonParams,
                     catalogue=None):
    """Flattened weighted residual; the squared norm is the objective."""
    import numpy as np

    if abs(u) > 60.0:
        return None
    fam = build_family(name, shape, math.exp(u), catalogue=catalogue)
    res = soliton_residual(fam, params)
    d = fam.diag
    out = []
    for (i, j) in ((0, 0), (1, 1), (2, 2)):
        out.append(res.e[i, j] / d[i])
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        out.append(res.e[i, j] * math.sqrt(2.0 / (d[i] * d[j])))
    for a in range(3):
        for b in range(a + 1, 3):
            for cc in range(3):
                out.append(res.ym[a][b][cc] / math.sqrt(d[a] * d[b] * d[cc]))
    out.append(res.d)
    return np.array([float(x) for x in out])


def lm_solve(name: str, params: SolitonParams, cfg: SearchConfig,
             catalogue=None) -> SearchReport:
    """Damped Gauss-Newton over (shape, log e^{2 phi}); deterministic.

    Multiplicative damping (x10 on reject, /10 on accept, start 1e-3),
    central-difference Jacobians.  Converged means the objective is below
    cfg.tol and the undamped Gauss-Newton correction is below cfg.step_tol
    (a start already below tolerance converges with zero iterations).  The
    correction norm, not the damped step, is the right terminal quantity:
    damped steps freeze once proposals stop being accepted at the floor,
    while the correction stays order-one on the degenerate-limit escape
    paths, which must keep reporting max-iterations.
    """
    import numpy as np

    cat = CATALOGUE if catalogue is None else catalogue
    if name not in cat:
        raise KeyError(f"unknown family {name!r}; known: {sorted(cat)}")
    shape0, e2phi0 = cfg.initial
    x = np.array([float(shape0), math.log(float(e2phi0))])
    r = _residual_vector(name, x[0], x[1], params, cat)
    if r is None:
        raise ValueError("initial point out of range")
    obj = float(r @ r)
    lam = cfg.damping
    events = []
    last_step = 0.0
    it = 0
    status = "max-iterations"
    while it <= cfg.max_iter:
        if it == 0 and obj <= cfg.tol:
            status = "converged"
            break
        if it == cfg.max_iter:
            break
        jac = np.zeros((len(r), 2))
        ok = True
        for col in range(2):
            xp, xm = x.copy(), x.copy()
            xp[col] += cfg.fd_step
            xm[col] -= cfg.fd_step
            rp = _residual_vector(name, xp[0], xp[1], params, cat)
            rm = _residual_vector(name, xm[0], xm[1], params, cat)
            if rp is None or rm is None:
                ok = False
                break
            jac[:, col] = (rp - rm) / (2 * cfg.fd_step)
        if not ok:
            events.append(f"iter {it}: stencil out of range, damping raised")
            lam *= cfg.damping_up
            it += 1
            continue
        if obj <= cfg.tol:
            gn = np.linalg.lstsq(jac, -r, rcond=None)[0]
            gn_norm = float(np.linalg.norm(gn))
            if gn_norm <= cfg.step_tol:
                status = "converged"
                last_step = gn_norm
                break
        a = jac.T @ jac + lam * np.eye(2)
        try:
            delta = np.linalg.solve(a, -(jac.T @ r))
        except np.linalg.LinAlgError:
            events.append(f"iter {it}: singular normal equations, damping raised")
            lam *= cfg.damping_up
            it += 1
            continue
        x_new = x + delta
        r_new = _residual_vector(name, x_new[0], x_new[1], params, cat)
        if r_new is not None:
            obj_new = float(r_new @ r_new)
        else:
            obj_new = float("inf")
        if math.isfinite(obj_new) and obj_new < obj:
            x, r, obj = x_new, r_new, obj_new
            last_step = float(np.linalg.norm(delta))
            lam /= cfg.damping_down
        else:
            lam *= cfg.damping_up
        it += 1

    shape, e2phi = float(x[0]), math.exp(float(x[1]))
    if status != "converged" and (abs(shape) < 1e-8 or e2phi < 1e-8):
        events.append("iterate collapsed toward the flat limit "
                      "(shape or weight near zero); the infimum 0 there "
                      "is not attained by any family member")
    k = float(params.kappa)
    if e2phi > 0:
        fam = build_family(name, shape, e2phi, catalogue=cat)
        gp, _dp = lie_geometry(fam)
        eig = eigenreport(gp.metric, gp.ric)
        scal = float(gp.scal)
        eigenvalues = tuple(float(v) for v in eig.eigenvalues)
    else:
        scal = float("nan")
        eigenvalues = (float("nan"),) * 3
    defects = (abs(scal + 24.0 / k), abs(e2phi - 48.0 / k))
    return SearchReport(name, k, status, it, shape, e2phi, obj, last_step,
                        tuple(events), scal, eigenvalues, defects)


def multi_start(name: str, params: SolitonParams, cfg: SearchConfig,
                n_starts: int = 4, catalogue=None) -> tuple:
    """Independent seeded restarts, run concurrently; results in start order."""
    import random
    from concurrent.futures import ThreadPoolExecutor

    rng = random.Random(cfg.seed)
    cat = CATALOGUE if catalogue is None else catalogue
    lo_s, hi_s = cat[name]["shape_bounds"]
    lo_e, hi_e = cat[name]["e2phi_bounds"]
    starts = [cfg.initial] + [
        (rng.uniform(lo_s, hi_s), rng.uniform(lo_e, hi_e))
        for _ in range(n_starts - 1)]
    configs = [SearchConfig(s, cfg.tol, cfg.max_iter, cfg.damping,
                            cfg.damping_up, cfg.damping_down, cfg.fd_step,
                            cfg.step_tol, cfg.seed) for s in starts]
    with ThreadPoolExecutor(max_workers=min(4, len(configs))) as pool:
        futures = [pool.submit(lm_solve, name, params, c, cat) for c in configs]
        return tuple(f.result() for f in futures)


@dataclass(frozen=True)
class GridReport:
    family: str
    kappa: float
    n: int
    shape_bounds: tuple
    e2phi_bounds: tuple
    min_objective: float
    argmin: tuple
    all_positive: bool

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "kappa": self.kappa,
            "n": self.n,
            "shape_bounds": list(self.shape_bounds),
            "e2phi_bounds": list(self.e2phi_bounds),
            "min_objective": self.min_objective,
            "argmin": list(self.argmin),
            "all_positive": self.all_positive,
        }


def grid_scan(name: str, params: SolitonParams, n: int = 20,
              shape_bounds=None, e2phi_bounds=None, catalogue=None) -> GridReport:
    """Objective over an n x n (shape, e^{2 phi}) grid; empirical record only."""
    cat = CATALOGUE if catalogue is None else catalogue
    entry = cat[name]
    lo_s, hi_s = shape_bounds or entry["shape_bounds"]
    lo_e, hi_e = e2phi_bounds or entry["e2phi_bounds"]
    best = None
    arg = None
    positive = True
    for i in range(n):
        shape = lo_s + (hi_s - lo_s) * i / (n - 1) if n > 1 else lo_s
        for j in range(n):
            e2phi = lo_e + (hi_e - lo_e) * j / (n - 1) if n > 1 else lo_e
            fam = build_family(name, shape, e2phi, catalogue=cat)
            obj = float(soliton_objective(fam, params))
            if best is None or obj < best:
                best, arg = obj, (shape, e2phi)
            if obj <= 0:
                positive = False
    return GridReport(name, float(params.kappa), n, (lo_s, hi_s), (lo_e, hi_e),
                      best, arg, positive)
