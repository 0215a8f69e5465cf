"""Command-line front end: ``influsat <command> ...``.

Every command prints one JSON document (keys sorted, counts as decimal
strings) or CSV.  Exit codes: 0 ok, 2 bad input, 3 engine not applicable,
4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Sequence

from . import hierarchical as hier
from . import oracle, star
from .errors import CapExceededError, EngineInapplicableError, InfluenceError, InputError
from .graph import InfluenceGraph, classify_actors, spread_rounds
from .models import (
    GolfModel,
    InfluenceGame,
    NonObliviousModel,
    ObliviousModel,
    collective_decision,
    golf_final_decision,
    golf_to_influence_game,
    nonoblivious_final_decision,
    vector_mask,
)
from .graph import spread_mask
from .reductions import count_vertex_covers, parse_edge_list, vc_gadget

log = logging.getLogger("influsat")

ENGINES = ("auto", "bruteforce", "hierarchical", "star")


# input ------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_json(path: str) -> dict:
    text = _read(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return doc


def _vertex_list(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"vertex list {text!r} must be integers separated by commas") from None


def _is_star_descriptor(doc: dict) -> bool:
    return "fc" in doc and "vertices" not in doc


def load_graph(doc: dict) -> InfluenceGraph:
    if _is_star_descriptor(doc):
        s = star.star_from_dict(doc)
        return s.to_graph()
    return InfluenceGraph.from_dict(doc)


def default_players(g: InfluenceGraph) -> frozenset[int]:
    """Vertices without predecessors (leaders and independents)."""
    return frozenset(i for i in range(g.n) if not g.pred_masks[i])


def load_game(doc: dict, players_flag: str | None = None, quota: int | None = None) -> InfluenceGame:
    if _is_star_descriptor(doc):
        game = star.star_from_dict(doc).to_game()
        if players_flag is None and quota is None:
            return game
        g = game.graph
        pl = game.players if players_flag is None else frozenset(_vertex_list(players_flag))
        return InfluenceGame(g, game.quota if quota is None else quota, pl)
    g = InfluenceGraph.from_dict(doc)
    if players_flag is not None:
        pl = frozenset(_vertex_list(players_flag))
    elif "players" in doc:
        pl = frozenset(_players_field(doc["players"]))
    else:
        pl = default_players(g)
    q = quota if quota is not None else doc.get("quota", 0)
    return InfluenceGame(g, q, pl)


def _players_field(value) -> list[int]:
    if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in value):
        raise InputError("'players' must be a list of vertex ids")
    return value


def load_model(doc: dict, player_rule: str = "restricted"):
    """Decision model from a model document or a star descriptor (non-oblivious unless 'model' says otherwise)."""
    kind = doc.get("model", "nonoblivious" if _is_star_descriptor(doc) else None)
    if kind not in ("golf", "oblivious", "nonoblivious"):
        raise InputError("model document needs 'model': golf | oblivious | nonoblivious")
    if "quota" not in doc:
        raise InputError("model document needs 'quota'")
    if kind == "golf":
        return GolfModel(InfluenceGraph.from_dict(doc), doc.get("r", "1/2"), doc["quota"])
    body = {k: v for k, v in doc.items() if k != "model"}
    game = load_game(body)
    return ObliviousModel(game) if kind == "oblivious" else NonObliviousModel(game, player_rule)


# engines ------------------------------------------------------------------------


def _game_of(model):
    """(influence game, model kind, player rule) that the polynomial engines work on."""
    if isinstance(model, GolfModel):
        return golf_to_influence_game(model), "nonoblivious", "restricted"
    if isinstance(model, ObliviousModel):
        return model.game, "oblivious", "restricted"
    return model.game, "nonoblivious", model.player_rule


def _satisfaction_star(model, actors: list[int]) -> dict[int, int]:
    game, kind, rule = _game_of(model)
    rec = star.recognize_star(game)
    out = {}
    for i in actors:
        v = rec.mapping[i]
        if kind == "oblivious":
            out[i] = star.sat_oblivious_star(rec.star, v)
        else:
            out[i] = star.sat_nonoblivious_star(rec.star, v, rule)
    return out


def _satisfaction_hier(model, actors: list[int], cap: int) -> dict[int, int]:
    game, kind, _ = _game_of(model)
    if kind == "oblivious":
        return {i: hier.sat_oblivious_hierarchical(game, i, cap) for i in actors}
    return {i: hier.sat_nonoblivious_hierarchical(game, i) for i in actors}


def _satisfaction_brute(model, actors: list[int], cap: int, workers: int) -> dict[int, int]:
    counts = oracle.satisfaction_bruteforce(model, cap=cap, workers=workers)
    return {i: counts[i] for i in actors}


def _n_of(model) -> int:
    return model.n if isinstance(model, GolfModel) else model.game.n


def run_engine(engine: str, star_fn, hier_fn, brute_fn, n: int, cap: int):
    """Dispatch to the requested engine; ``auto`` tries star, hierarchical, then brute force."""
    if engine == "star":
        return "star", star_fn()
    if engine == "hierarchical":
        return "hierarchical", hier_fn()
    if engine == "bruteforce":
        return "bruteforce", brute_fn()
    reasons = {}
    for name, fn in (("star", star_fn), ("hierarchical", hier_fn)):
        try:
            return name, fn()
        except EngineInapplicableError as exc:
            reasons[name] = {"message": str(exc), "certificate": exc.certificate}
            log.debug("engine %s not applicable: %s", name, exc)
    try:
        return "bruteforce", brute_fn()
    except CapExceededError as exc:
        raise EngineInapplicableError(
            f"no polynomial engine applies and {exc}", {"engines": reasons, "size": exc.size, "cap": exc.cap}
        ) from exc


def _check_actor(n: int, i: int) -> int:
    if not 0 <= i < n:
        raise InputError(f"actor {i} is not a vertex (n={n})")
    return i


# output ---------------------------------------------------------------------------


def _emit(doc, fmt: str, rows: list[dict] | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            rows = [{"key": k, "value": v} for k, v in sorted(doc.items())]
        fields = list(rows[0]) if rows else ["key", "value"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# commands ---------------------------------------------------------------------------


def cmd_spread(args) -> tuple[dict, list | None]:
    g = load_graph(_load_json(args.graph))
    rounds = spread_rounds(g, _vertex_list(args.seed))
    doc = {"rounds": [sorted(r) for r in rounds], "final": sorted(rounds[-1])}
    rows = [{"round": t, "active": " ".join(map(str, sorted(r)))} for t, r in enumerate(rounds)]
    return doc, rows


def cmd_decide(args) -> tuple[dict, list | None]:
    model = load_model(_load_json(args.model), args.player_rule)
    n = _n_of(model)
    text = args.vector.replace(",", "").replace(" ", "")
    if any(ch not in "01" for ch in text):
        raise InputError(f"vector {args.vector!r} must be a 0/1 string")
    x = [int(ch) for ch in text]
    if isinstance(model, GolfModel):
        final = golf_final_decision(model, x)
    elif isinstance(model, ObliviousModel):
        active = spread_mask(model.game.graph, vector_mask(x, n) & model.game.players_mask)
        final = tuple((active >> i) & 1 for i in range(n))
    else:
        final = nonoblivious_final_decision(model.game, x, model.player_rule)
    doc = {"final": "".join(map(str, final)), "decision": collective_decision(model, x)}
    return doc, None


def cmd_satisfaction(args) -> tuple[dict, list | None]:
    model = load_model(_load_json(args.model), args.player_rule)
    n = _n_of(model)
    if args.all:
        actors = list(range(n))
    elif args.actor is None:
        raise InputError("give --actor or --all")
    else:
        actors = [_check_actor(n, args.actor)]
    start = time.perf_counter()
    engine, values = run_engine(
        args.engine,
        lambda: _satisfaction_star(model, actors),
        lambda: _satisfaction_hier(model, actors, args.cap),
        lambda: _satisfaction_brute(model, actors, args.cap, args.workers),
        n,
        args.cap,
    )
    elapsed = time.perf_counter() - start
    log.info("satisfaction via %s in %.6f s", engine, elapsed)
    doc = {"engine": engine, "n": n, "satisfaction": {str(i): str(values[i]) for i in actors}}
    if args.timing:
        doc["seconds"] = round(elapsed, 6)
    rows = [{"actor": i, "satisfaction": str(values[i]), "engine": engine} for i in actors]
    return doc, rows


def cmd_indices(args) -> tuple[dict, list | None]:
    model = load_model(_load_json(args.model), args.player_rule)
    n = _n_of(model)
    actors = list(range(n))
    engine, sat = run_engine(
        args.engine,
        lambda: _satisfaction_star(model, actors),
        lambda: _satisfaction_hier(model, actors, args.cap),
        lambda: _satisfaction_brute(model, actors, args.cap, args.workers),
        n,
        args.cap,
    )
    half = 1 << (n - 1) if n else 0
    if engine == "bruteforce":
        rae, bz = oracle.model_indices(model, cap=args.cap, workers=args.workers)
    else:
        # the associated simple game has all n actors as players and Rae = Sat
        rae = [sat[i] for i in actors]
        bz = [r - half for r in rae]
    for i in actors:
        if rae[i] - bz[i] != half or rae[i] != sat[i]:
            raise AssertionError(f"index identity failed for actor {i}")
    rows = [{"actor": i, "sat": str(sat[i]), "rae": str(rae[i]), "bz": str(bz[i])} for i in actors]
    doc = {"engine": engine, "n": n, "rows": rows}
    return doc, rows


def _expansion_counts(engine: str, game: InfluenceGame, trace: bool, cap: int, workers: int):
    g = game.graph
    players = game.players

    def via_star():
        rec = star.recognize_star(InfluenceGame(g, 0, players))
        return star.star_expansion_counts(rec.star, trace)

    def via_hier():
        return hier.expansion_counts(hier.decompose(g), players, trace)

    def via_brute():
        return oracle.expansion_histogram(g, players, trace=trace, cap=cap, workers=workers)

    return run_engine(engine, via_star, via_hier, via_brute, g.n, cap)


def cmd_expansion(args) -> tuple[dict, list | None]:
    doc_in = _load_json(args.graph)
    game = load_game(doc_in, args.players, quota=0)
    n = game.n
    if not args.all and args.k is None:
        raise InputError("give -k K or --all")
    engine, counts = _expansion_counts(args.engine, game, args.trace_level, args.cap, args.workers)
    level = "trace" if args.trace_level else "full"
    if args.all:
        doc = {"engine": engine, "level": level, "n": n, "counts": [str(c) for c in counts], "total": str(sum(counts))}
        rows = [{"k": k, "count": str(c)} for k, c in enumerate(counts)]
    else:
        k = args.k
        value = counts[k] if 0 <= k <= n else 0
        doc = {"engine": engine, "level": level, "n": n, "k": k, "count": str(value)}
        rows = [{"k": k, "count": str(value)}]
    return doc, rows


def cmd_recognize(args) -> tuple[dict, list | None]:
    doc_in = _load_json(args.graph)
    game = load_game(doc_in, args.players, quota=doc_in.get("quota", 0) if not _is_star_descriptor(doc_in) else None)
    g = game.graph
    out: dict = {"n": g.n}
    try:
        actors = classify_actors(g)
        out["two_layered"] = {
            "leaders": sorted(actors.leaders),
            "followers": sorted(actors.followers),
            "independents": sorted(actors.independents),
        }
    except InfluenceError as exc:
        out["two_layered"] = None
        out["two_layered_certificate"] = {"vertex": exc.vertex}
    try:
        d = hier.decompose(g)
        out["hierarchical"] = d.to_dict()
        out["hierarchical_form"] = hier.render(d.root) if d.root is not None else ""
    except EngineInapplicableError as exc:
        out["hierarchical"] = None
        out["hierarchical_certificate"] = {"message": str(exc), **exc.certificate}
    try:
        rec = star.recognize_star(game)
        out["star"] = {
            "descriptor": rec.star.to_dict(),
            "center": rec.center,
            "mapping": {str(k): v for k, v in sorted(rec.mapping.items())},
        }
    except EngineInapplicableError as exc:
        out["star"] = None
        out["star_certificate"] = {"message": str(exc), **exc.certificate}
    return out, None


def cmd_gadget(args) -> tuple[dict, list | None]:
    inst = parse_edge_list(_read(args.edges))
    gd = vc_gadget(inst)
    doc = {
        "graph": gd.graph.to_dict(),
        "players": sorted(gd.players),
        "k": gd.k,
        "warnings": gd.warnings,
        "source": {"n": inst.n, "m": inst.m, "names": [str(v) for v in inst.names]},
    }
    if args.verify:
        trace = oracle.expansion_histogram(gd.graph, gd.players, trace=True, cap=args.cap, workers=args.workers)
        doc["trace_count"] = str(trace[gd.k])
        doc["vertex_covers"] = str(count_vertex_covers(inst, (2 * inst.n) // 3, cap=args.cap))
    return doc, None


# parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="influsat", description="Exact satisfaction and expansion counts for influence-game decision models.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="log engine choices to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="largest number of enumerated bits (default %(default)s)")
    common.add_argument("--workers", type=int, default=1, help="threads for brute-force enumeration")
    eng = argparse.ArgumentParser(add_help=False)
    eng.add_argument("--engine", choices=ENGINES, default="auto")
    rule = argparse.ArgumentParser(add_help=False)
    rule.add_argument("--player-rule", choices=("restricted", "literal"), default="restricted",
                      help="non-oblivious players read F(X & N) (restricted) or F(X) (literal)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spread", parents=[common], help="activation rounds from a seed set")
    s.add_argument("graph")
    s.add_argument("--seed", default="", help="comma-separated initial vertices")
    s.set_defaults(func=cmd_spread)

    s = sub.add_parser("decide", parents=[common, rule], help="final vector and collective decision")
    s.add_argument("model")
    s.add_argument("--vector", required=True, help="initial decisions as a 0/1 string, actor 0 first")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("satisfaction", parents=[common, eng, rule], help="satisfaction of an actor")
    s.add_argument("model")
    who = s.add_mutually_exclusive_group()
    who.add_argument("--actor", type=int)
    who.add_argument("--all", action="store_true")
    s.add_argument("--timing", action="store_true", help="include wall time in the output")
    s.set_defaults(func=cmd_satisfaction)

    s = sub.add_parser("indices", parents=[common, eng, rule], help="Sat, Rae and Banzhaf for every actor")
    s.add_argument("model")
    s.set_defaults(func=cmd_indices)

    s = sub.add_parser("expansion", parents=[common, eng], help="expansion counts |F_k(N)|")
    s.add_argument("graph")
    s.add_argument("--players", help="comma-separated players (default: file 'players' or sources)")
    s.add_argument("-k", type=int)
    s.add_argument("--all", action="store_true")
    lvl = s.add_mutually_exclusive_group()
    lvl.add_argument("--trace-level", action="store_true", help="count subsets of N only")
    lvl.add_argument("--full-count", action="store_false", dest="trace_level", help="count subsets of V (default)")
    s.set_defaults(func=cmd_expansion)

    s = sub.add_parser("recognize", parents=[common], help="two-layered, hierarchical and star certificates")
    s.add_argument("graph")
    s.add_argument("--players")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("gadget", parents=[common], help="vertex-cover gadget from an edge list")
    s.add_argument("edges")
    s.add_argument("--verify", action="store_true", help="also count by brute force")
    s.set_defaults(func=cmd_gadget)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        doc, rows = args.func(args)
    except InfluenceError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        cert = getattr(exc, "certificate", None)
        if cert:
            err["certificate"] = cert
        sys.stderr.write(json.dumps(err, sort_keys=True, default=str) + "\n")
        return exc.exit_code
    sys.stdout.write(_emit(doc, args.format, rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())
