"""Run configuration, analysis drivers and report assembly for the CLI."""

from __future__ import annotations

import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field

from . import __version__
from . import cohomology as co
from . import crystal as cr
from . import qform as qf
from . import rootdata as rd
from .cache import Cache, make_key, resolve_dir
from .errors import ConfigError, InvalidForm, OmegaLabError, PredicateViolated
from .exactalg import field_for_order
from .nichols import slices as sl
from .nichols.bicharacter import Bicharacter
from .nichols.hopf import serre_degree, serre_element, specialize_vector

SCHEMA_VERSION = "1.0"
ANALYSES = ("dims", "serre", "geo", "fibers", "frobenius", "crystal", "indict")
MAX_HEIGHT = {"dims": 10, "serre": 10, "geo": 8, "fibers": 7, "frobenius": 10,
              "crystal": 12, "indict": 12}
VOLATILE = ("timing",)
CONFIG_KEYS = ("type", "rank", "order", "qz", "height", "analyses", "iota", "strategy",
               "cache", "out", "jobs")


# --- configuration ----------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    family: str
    rank: int
    order: int | None
    qz: tuple | None  # None selects the minimal form
    height: int
    analyses: tuple
    iota: tuple | None = None
    strategy: str = "min"
    cache: str | None = None
    out: str | None = None
    jobs: int = 1

    @property
    def type_name(self):
        return f"{self.family}{self.rank}"

    def echo(self) -> dict:
        """The fields that determine the report (paths and worker counts excluded)."""
        return {
            "type": self.type_name,
            "order": "inf" if self.order is None else self.order,
            "qz": "min" if self.qz is None else list(self.qz),
            "height": self.height,
            "analyses": list(self.analyses),
            "iota": None if self.iota is None else list(self.iota),
            "strategy": self.strategy,
        }

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        for k in data:
            if k not in CONFIG_KEYS:
                raise ConfigError(f"unknown configuration key {k!r}", k)
        family, rank = _parse_type(data.get("type"), data.get("rank"))
        order = _parse_order(data.get("order"))
        cd = rd.cartan_datum(family, rank)
        qz = _parse_int_list(data.get("qz", "min"), "qz", allow_min=True)
        if qz is not None and len(qz) != rank:
            raise ConfigError(f"qz needs {rank} values", "qz")
        try:
            qf.make_spec(cd, order, qz)
        except InvalidForm as exc:
            raise ConfigError(str(exc), "qz") from None
        height = _parse_int(data.get("height", 4), "height")
        if height < 1:
            raise ConfigError("height must be at least 1", "height")
        analyses = _parse_analyses(data.get("analyses", "dims"))
        for a in analyses:
            if height > MAX_HEIGHT[a]:
                raise ConfigError(f"height {height} exceeds the limit {MAX_HEIGHT[a]} for {a}", "height")
        if any(a in ("crystal", "indict") for a in analyses) and qz is not None:
            spec = qf.make_spec(cd, order, qz)
            minimal = rd.symmetrizer(cd)
            if tuple(spec.reduce(v) for v in qz) != tuple(spec.reduce(v) for v in minimal):
                raise ConfigError("crystal analyses need the minimal form", "qz")
        iota = _parse_int_list(data.get("iota"), "iota", allow_min=False)
        if iota is not None and sorted(iota) != list(range(rank)):
            raise ConfigError(f"iota must be a permutation of 0..{rank - 1}", "iota")
        strategy = data.get("strategy", "min") or "min"
        if strategy not in cr.STRATEGIES:
            raise ConfigError(f"strategy must be one of {', '.join(cr.STRATEGIES)}", "strategy")
        jobs = _parse_int(data.get("jobs", 1), "jobs")
        if jobs < 1:
            raise ConfigError("jobs must be at least 1", "jobs")
        return cls(family, rank, order, qz, height, analyses, iota, strategy,
                   data.get("cache"), data.get("out"), jobs)


def _parse_type(text, rank):
    if not text:
        raise ConfigError("a root system type is required", "type")
    text = str(text).strip().upper()
    try:
        if rank is not None and text.isalpha():
            family, r = text, _parse_int(rank, "rank")
        else:
            family, r = rd.parse_type(text)
            if rank is not None and _parse_int(rank, "rank") != r:
                raise ConfigError(f"rank {rank} contradicts type {text}", "rank")
        rd.cartan_datum(family, r)
    except ConfigError:
        raise
    except OmegaLabError as exc:
        raise ConfigError(str(exc), "type") from None
    return family, r


def _parse_order(value):
    if value is None:
        raise ConfigError("an order N is required (a positive integer or 'inf')", "order")
    if str(value).lower() in ("inf", "infinity", "none"):
        return None
    n = _parse_int(value, "order")
    if n < 1:
        raise ConfigError("order must be a positive integer or 'inf'", "order")
    return n


def _parse_int(value, key):
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be an integer", key)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}", key) from None


def _parse_int_list(value, key, allow_min):
    if value is None:
        return None
    if allow_min and str(value).lower() == "min":
        return None
    if isinstance(value, str):
        value = [v for v in value.replace(" ", "").split(",") if v]
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{key} must be a list of integers", key)
    return tuple(_parse_int(v, key) for v in value)


def _parse_analyses(value):
    if isinstance(value, str):
        value = ANALYSES if value == "all" else [v for v in value.replace(" ", "").split(",") if v]
    if not value:
        raise ConfigError("at least one analysis is required", "analyses")
    bad = [v for v in value if v not in ANALYSES]
    if bad:
        raise ConfigError(f"unknown analyses {bad}; choose from {', '.join(ANALYSES)}", "analyses")
    return tuple(a for a in ANALYSES if a in set(value))


# --- run context ------------------------------------------------------------

@dataclass
class Context:
    config: RunConfig
    cache: Cache
    cd: rd.CartanDatum = field(init=False)
    spec: qf.QFormSpec = field(init=False)
    preds: dict = field(init=False)
    _objects: dict = field(default_factory=dict)

    def __post_init__(self):
        c = self.config
        self.cd = rd.cartan_datum(c.family, c.rank)
        self.spec = qf.make_spec(self.cd, c.order, c.qz)
        self.preds = qf.predicates(self.spec)

    @property
    def even(self):
        return self.spec.order is not None and self.spec.order % 2 == 0

    @property
    def iota(self):
        c = self.config
        return cr.IotaSeq(c.iota) if c.iota is not None else cr.IotaSeq.default(self.cd)

    def weights(self, min_height=1):
        return rd.weights_up_to_height(self.cd, self.config.height, min_height=min_height)

    def lazy(self, name, build):
        if name not in self._objects:
            self._objects[name] = build()
        return self._objects[name]

    def chi(self):
        return self.lazy("chi", lambda: Bicharacter(self.spec, True))

    def dk(self):
        return self.lazy("dk", lambda: sl.dk_slice(self.chi(), self.config.height, check=False))

    def key(self, module, mu, extra=None):
        return make_key(module, self.cd.name, self.spec.to_json(), mu, extra)

    def cached_records(self, module, weights, compute_all, extra=None):
        """Records per weight; ``compute_all()`` runs only if some weight misses."""
        out = {}
        missing = []
        for mu in weights:
            v = self.cache.get(self.key(module, mu, extra))
            if v is None:
                missing.append(mu)
            else:
                out[mu] = v
        if missing:
            fresh = compute_all(missing)
            for mu in missing:
                out[mu] = fresh[mu]
                self.cache.put(self.key(module, mu, extra), fresh[mu])
        return [out[mu] for mu in weights]


def finding(analysis, predicate, weight, asserted, message):
    return {
        "analysis": analysis,
        "predicate": predicate,
        "weight": None if weight is None else list(weight),
        "asserted": bool(asserted),
        "message": message,
    }


# --- worker pool --------------------------------------------------------------

_WORKER = {}


def _pmap(fn, items, jobs):
    """Map over items, in a forked pool when jobs > 1; order is preserved."""
    items = list(items)
    if jobs <= 1 or len(items) < 2 or "fork" not in multiprocessing.get_all_start_methods():
        return [fn(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(jobs, len(items))) as pool:
        return pool.map(fn, items, chunksize=1)


def _cohom_task(mu):
    return {str(n): d for n, d in co.cohomology_dims(_WORKER["algebra"], mu).items()}


def _fiber_task(mu):
    A = _WORKER["algebra"]
    lam = rd.neg(mu)
    star = co.omega_star_fiber(A, lam)
    return {str(n): d for n, d in sorted(star.items())}


def _crystal_task(mu):
    cd, iota = _WORKER["cd"], _WORKER["iota"]
    lam = rd.neg(mu)
    try:
        elts = cr.enumerate_weight(cd, lam, iota)
    except PredicateViolated as exc:
        return {"weight": list(lam), "error": str(exc)}
    return {
        "weight": list(lam),
        "count": len(elts),
        "elements": [{"entries": list(b.entries), "eps": list(cr.eps_vector(b))} for b in elts],
    }


def _indict_task(mu):
    cd, iota, spec, strategy = _WORKER["cd"], _WORKER["iota"], _WORKER["spec"], _WORKER["strategy"]
    lam = rd.neg(mu)
    elts = cr.enumerate_weight(cd, lam, iota)
    recs = [cr.classify(b, spec, strategy) for b in elts]
    return {
        "weight": list(lam),
        "components": len(recs),
        "under_scrutiny": sum(1 for r in recs if len(r["scrutiny_set"]) == 1),
        "suspicious": sum(1 for r in recs if r["suspicious"]),
        "indicted": sum(1 for r in recs if r["indicted"]),
        "suspects": [r for r in recs if r["suspicious"]],
    }


# --- analyses -----------------------------------------------------------------

def analysis_dims(ctx: Context):
    ws = ctx.weights()
    nontorsion = ctx.spec.order is None

    def compute(missing):
        H = max(rd.height(m) for m in missing)
        ranks = sl.certified_generic_ranks(ctx.chi(), H)
        small = sl.small_slice(ctx.chi(), H)
        return {mu: {"weight": list(mu), "kostant": rd.kostant_partitions(ctx.cd, mu),
                     "dk": ranks[mu], "small": small.dim(mu)} for mu in missing}

    recs = ctx.cached_records("dims", ws, compute)
    findings = []
    for r in recs:
        if r["dk"] != r["kostant"]:
            findings.append(finding("dims", "dk_flat", r["weight"], True,
                                    f"dim U^DK = {r['dk']}, Kostant count {r['kostant']}"))
        if nontorsion and r["small"] != r["dk"]:
            findings.append(finding("dims", "nontorsion_collapse", r["weight"], True,
                                    f"small dim {r['small']} differs from DK dim {r['dk']}"))
    return {"records": recs}, findings


def analysis_serre(ctx: Context):
    cd = ctx.cd
    pairs = []
    rho = rd.rho(cd)
    for i in range(cd.rank):
        for j in range(cd.rank):
            if i == j:
                continue
            lam = rd.sub(cd.reflect(cd.reflect(rho, j), i), rho)
            deg = serre_degree(cd, i, j)
            pairs.append({"pair": [i, j], "degree": list(deg), "identity": rd.neg(lam) == deg})
    findings = [finding("serre", "serre_weight", None, True, f"pair {p['pair']}")
                for p in pairs if not p["identity"]]

    chi = ctx.chi()
    field = chi.field
    elements = []
    for i in range(cd.rank):
        for j in range(cd.rank):
            if i == j or rd.height(serre_degree(cd, i, j)) > ctx.config.height:
                continue
            key = ctx.key("serre_element", serre_degree(cd, i, j), [i, j])

            def build(i=i, j=j):
                x = specialize_vector(serre_element(chi, i, j), field)
                return {"pair": [i, j], "degree": list(x.degree),
                        "coefficients": [[list(w), field.to_json(c)] for w, c in sorted(x.coeffs.items())]}

            elements.append(ctx.cache.get_or_compute(key, build))

    def compute(missing):
        res = sl.serre_generates(chi, max(rd.height(m) for m in missing), ctx.dk())
        return {mu: {"weight": list(mu), "serre_generates": bool(res[mu])} for mu in missing}

    recs = ctx.cached_records("serre", ctx.weights(), compute)
    asserted = ctx.preds["star"]
    for r in recs:
        if not r["serre_generates"]:
            findings.append(finding("serre", "serre_generation", r["weight"], asserted,
                                    "Serre ideal at u=1 differs from the saturated ideal"))
    conductor = ctx.spec.order
    return {"field": {"conductor": conductor, "modulus": list(field.modulus)},
            "weight_identity": pairs, "serre_elements": elements, "records": recs}, findings


def analysis_geo(ctx: Context):
    table = rd.kostant_table(ctx.cd)
    ws = ctx.weights()

    def compute(missing):
        _WORKER["algebra"] = ctx.dk()
        dims = _pmap(_cohom_task, missing, ctx.config.jobs)
        return {mu: {"weight": list(mu), "cohomology": d} for mu, d in zip(missing, dims)}

    recs = ctx.cached_records("geo", ws, compute)
    asserted = (ctx.preds["star"] or ctx.spec.order == 1) and not ctx.even
    findings = []
    out = []
    for mu, r in zip(ws, recs):
        length = table.get(mu)
        expected = {str(length): 1} if length is not None else {}
        rec = dict(r, length=length, expected=expected, match=r["cohomology"] == expected)
        out.append(rec)
        if not rec["match"]:
            findings.append(finding("geo", "geo_formula", mu, asserted,
                                    f"cohomology {r['cohomology']} vs expected {expected}"))
    return {"records": out}, findings


def analysis_fibers(ctx: Context):
    table = rd.kostant_table(ctx.cd)
    ws = ctx.weights()

    def compute(missing):
        A = ctx.dk()
        _WORKER["algebra"] = A
        stars = _pmap(_fiber_task, missing, ctx.config.jobs)
        shrieks = _pmap(_cohom_task, missing, ctx.config.jobs)
        return {mu: {"weight": list(rd.neg(mu)), "shriek": sh, "star": st,
                     "hyperbolic": A.dim(mu)}
                for mu, st, sh in zip(missing, stars, shrieks)}

    recs = ctx.cached_records("fibers", ws, compute)
    findings = []
    out = []
    ok_parity = not ctx.even
    for mu, r in zip(ws, recs):
        length = table.get(mu)
        checks = {}
        h1 = r["star"].get("-1", 0)
        if length == 2:
            checks["b"] = h1 == 0
            asserted = ctx.preds["star"] and ok_parity
        elif length is not None and length >= 3:
            checks["b_prime"] = h1 == 0
            asserted = ctx.preds["star_sharp"] and ok_parity
        else:
            asserted = False
        rec = dict(r, length=length, checks=checks)
        out.append(rec)
        for name, ok in checks.items():
            if not ok:
                findings.append(finding("fibers", name, rec["weight"], asserted,
                                        f"*-fiber has H^-1 of dimension {h1}"))
    return {"records": out}, findings


def analysis_frobenius(ctx: Context):
    if ctx.spec.order is None or not ctx.preds["avoids_small_torsion"]:
        return {"records": [], "skipped": True}, [
            finding("frobenius", "frobenius_identity", None, False,
                    "skipped: the identity needs a torsion form avoiding small torsion")]
    ws = ctx.weights()

    def compute(missing):
        H = max(rd.height(m) for m in missing)
        small = sl.small_slice(Bicharacter(ctx.spec, False), H)
        out = {}
        for mu in missing:
            out[mu] = {"weight": list(mu), "kostant": rd.kostant_partitions(ctx.cd, mu),
                       "small": small.dim(mu),
                       "holds": sl.frobenius_dim_identity(ctx.spec, mu, small)}
        return out

    recs = ctx.cached_records("frobenius", ws, compute)
    findings = [finding("frobenius", "frobenius_identity", r["weight"], True,
                        "dimension identity fails") for r in recs if not r["holds"]]
    sd = qf.sharp_data(ctx.spec)
    return {"sharp_positive_roots": [list(r) for r in sd.sharp_positive_roots],
            "sharp_cartan": sd.sharp_cartan.name, "records": recs}, findings


def analysis_crystal(ctx: Context):
    ws = ctx.weights()
    _WORKER.update(cd=ctx.cd, iota=ctx.iota)
    extra = {"iota": list(ctx.iota.base)}

    def compute(missing):
        res = _pmap(_crystal_task, missing, ctx.config.jobs)
        return dict(zip(missing, res))

    recs = ctx.cached_records("crystal", ws, compute, extra)
    findings = []
    for mu, r in zip(ws, recs):
        k = rd.kostant_partitions(ctx.cd, mu)
        r["kostant"] = k
        if r.get("count") != k:
            findings.append(finding("crystal", "count_law", r["weight"], True,
                                    r.get("error", f"{r.get('count')} elements, expected {k}")))
    return {"iota": list(ctx.iota.base), "records": recs}, findings


def analysis_indict(ctx: Context):
    ws = ctx.weights(min_height=2)
    _WORKER.update(cd=ctx.cd, iota=ctx.iota, spec=ctx.spec, strategy=ctx.config.strategy)
    extra = {"iota": list(ctx.iota.base), "strategy": ctx.config.strategy}

    def compute(missing):
        res = _pmap(_indict_task, missing, ctx.config.jobs)
        return dict(zip(missing, res))

    recs = ctx.cached_records("indict", ws, compute, extra)
    clean = ctx.spec.order is None or ctx.preds["avoids_small_torsion"]
    findings = []
    for r in recs:
        lam = r["weight"]
        for s in r["suspects"]:
            if not s["weight_filter"]:
                findings.append(finding("indict", "weight_filter", lam, True,
                                        f"suspicious component {s['entries']} fails the weight test"))
            if s["indicted"]:
                sc = s.get("sharp_conditions")
                if sc is not None and not all(sc):
                    findings.append(finding("indict", "sharp_conditions", lam, True,
                                            f"indicted component {s['entries']}: {sc}"))
                findings.append(finding("indict", "indicted_component", lam, clean,
                                        f"indicted component with string {s['string']}"))
    return {"iota": list(ctx.iota.base), "strategy": ctx.config.strategy,
            "indicted_weights": [r["weight"] for r in recs if r["indicted"]],
            "records": recs}, findings


DRIVERS = {
    "dims": analysis_dims,
    "serre": analysis_serre,
    "geo": analysis_geo,
    "fibers": analysis_fibers,
    "frobenius": analysis_frobenius,
    "crystal": analysis_crystal,
    "indict": analysis_indict,
}


# --- report -------------------------------------------------------------------

def run(config: RunConfig, cache: Cache | None = None) -> dict:
    if cache is None:
        cache = Cache(resolve_dir(config.cache))
    ctx = Context(config, cache)
    t0 = time.perf_counter()
    analyses = {}
    findings = []
    timing = {}
    for name in config.analyses:
        t = time.perf_counter()
        body, f = DRIVERS[name](ctx)
        analyses[name] = body
        findings.extend(f)
        timing[name] = round(time.perf_counter() - t, 4)
    timing["total"] = round(time.perf_counter() - t0, 4)
    timing["cache"] = {"hits": cache.hits, "misses": cache.misses, "enabled": cache.enabled}
    violated = any(f["asserted"] for f in findings)
    field = field_for_order(ctx.spec.order)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "omegalab", "version": __version__},
        "config": config.echo(),
        "form": {
            "type": ctx.cd.name,
            "cartan": [list(r) for r in ctx.cd.cartan],
            "qz": list(ctx.spec.qz),
            "order": "inf" if ctx.spec.order is None else ctx.spec.order,
            "field": {"conductor": ctx.spec.order, "modulus": list(field.modulus)},
            "predicates": ctx.preds,
        },
        "analyses": analyses,
        "findings": findings,
        "status": "violation" if violated else "ok",
        "timing": timing,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=1, sort_keys=True) + "\n"


def strip_volatile(report: dict) -> dict:
    return {k: v for k, v in _jsonable(report).items() if k not in VOLATILE}


def write_report(report: dict, path) -> None:
    text = dumps(report)
    if path in (None, "-"):
        print(text, end="")
        return
    tmp = f"{path}.tmp-{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def config_from_echo(echo: dict) -> RunConfig:
    data = dict(echo)
    if data.get("iota") is None:
        data.pop("iota", None)
    return RunConfig.from_mapping(data)


def first_difference(a, b, path="$"):
    if type(a) is not type(b):
        return path
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}.{k}"
            d = first_difference(a[k], b[k], f"{path}.{k}")
            if d:
                return d
        return None
    if isinstance(a, list):
        if len(a) != len(b):
            return f"{path}[len]"
        for i, (x, y) in enumerate(zip(a, b)):
            d = first_difference(x, y, f"{path}[{i}]")
            if d:
                return d
        return None
    return None if a == b else path


def verify(report: dict) -> tuple[int, list]:
    """Recompute a report from its config echo and compare; returns (exit code, messages)."""
    msgs = []
    if report.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {report.get('schema_version')!r}",
                          "schema_version")
    if "config" not in report:
        raise ConfigError("report has no config echo", "config")
    config = config_from_echo(report["config"])
    claimed = [f for f in report.get("findings", []) if f.get("asserted")]
    status_ok = (report.get("status") == "violation") == bool(claimed)
    if not status_ok:
        msgs.append("status field disagrees with the asserted findings")
    fresh = run(config, Cache(None))
    diff = first_difference(strip_volatile(report), strip_volatile(fresh))
    if diff:
        msgs.append(f"report differs from recomputation at {diff}")
    for f in fresh["findings"]:
        if f["asserted"]:
            msgs.append(f"violated: {f['analysis']}/{f['predicate']} at {f['weight']}: {f['message']}")
    code = 3 if msgs else 0
    return code, msgs
