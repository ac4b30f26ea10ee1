"""Command line front end.

Exit codes: 0 success, 1 semantic failure (axiom violation, false check,
unknown object), 2 parse failure (bad JSON, bad schema, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .analysis import (
    bourbaki_factor,
    components,
    fundamental_quotient,
    green,
    kernel,
    kernel_bruteforce,
    property_report,
)
from .bimodule import from_group_data
from .errors import AxiomViolation, ReesLabError, SchemaError, UnknownName
from .groups import FiniteGroup
from .selfsim import (
    SelfSimilarAction,
    from_covering_bimodule,
    from_endomorphism,
    from_group_data_action,
    parse_element,
    rees_mul,
    render_element,
    validate_action,
)
from .serialize import dump, dump_action, load
from .tensor import TensorMonoid
from .universal import (
    AmalgamEngine,
    UniversalGroup,
    check_embedding,
    hnn_reduce,
    parse_word,
    render_word,
)


class ParseFailure(Exception):
    pass


def _emit(obj, as_json: bool = True) -> None:
    if isinstance(obj, str) and not as_json:
        print(obj)
    else:
        print(json.dumps(obj, indent=2, ensure_ascii=False))


def _load_path(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(str(exc)) from exc
    try:
        return load(doc, corpus.group)
    except SchemaError as exc:
        raise ParseFailure(str(exc)) from exc


def resolve(ref: str, kinds=("action", "presentation", "bimodule", "group-data", "group")):
    """A file path or a bundled name."""
    if os.path.exists(ref):
        kind, obj = _load_path(ref)
        if kind not in kinds:
            raise ParseFailure(f"{ref} holds a {kind}, expected one of {', '.join(kinds)}")
        return kind, obj
    return corpus.lookup(ref, kinds)


def _action(ref: str) -> SelfSimilarAction:
    _, a = resolve(ref, ("action",))
    validate_action(a)
    return a


def _element(a: SelfSimilarAction, text: str):
    try:
        return parse_element(a, text)
    except (ValueError, IndexError, ReesLabError) as exc:
        raise ParseFailure(f"cannot parse element {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    try:
        kind, obj = resolve(args.target)
    except ReesLabError as exc:
        if isinstance(exc, UnknownName):
            raise
        _emit({"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    try:
        if kind == "action":
            validate_action(obj, args.depth)
        elif kind == "group-data":
            from_group_data(obj)
    except AxiomViolation as exc:
        _emit({"ok": False, "error": "AxiomViolation", "axiom": exc.axiom,
               "witness": _jsonable(exc.witness)})
        return 1
    except ReesLabError as exc:
        _emit({"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    print("OK")
    return 0


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_analyze(args) -> int:
    a = _action(args.name)
    rep = property_report(a, depth=args.depth).to_dict()
    K = kernel(a)
    rep["kernel"] = [a.group.label(g) for g in K.elements]
    rep["components"] = [list(c.letters) for c in components(a)]
    _emit(rep)
    return 0


def cmd_mul(args) -> int:
    a = _action(args.name)
    e1, e2 = _element(a, args.e1), _element(a, args.e2)
    p = rees_mul(a, e1, e2)
    if args.json:
        _emit({"word": list(p.word), "unit": p.unit, "text": render_element(a, p)})
    else:
        print(render_element(a, p))
    return 0


def cmd_green(args) -> int:
    a = _action(args.name)
    rel = args.relation.upper()
    if rel not in ("R", "L", "H", "J", "D"):
        raise ParseFailure(f"unknown relation {args.relation!r}")
    res = green(a, _element(a, args.e1), _element(a, args.e2), rel)
    if args.json:
        _emit({"holds": res.holds, "witness": _jsonable(res.witness)})
    else:
        print("true" if res.holds else "false")
    return 0


def cmd_kernel(args) -> int:
    a = _action(args.name)
    K = kernel(a)
    Kb, depth = kernel_bruteforce(a)
    q = fundamental_quotient(a)
    _emit({
        "kernel": [a.group.label(g) for g in K.elements],
        "size": len(K),
        "bruteforce_agrees": Kb == K,
        "bruteforce_depth": depth,
        "quotient": dump_action(q),
    })
    return 0


def cmd_decompose(args) -> int:
    a = _action(args.name)
    f = bourbaki_factor(a, _element(a, args.element))
    _emit({
        "runs": [{"component": c, "word": [a.letters[x] for x in w]} for c, w in f.runs],
        "unit": a.group.label(f.unit),
    })
    return 0


def _tensor_element(T: TensorMonoid, text: str):
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    try:
        return T.parse(value)
    except (ValueError, IndexError, ReesLabError) as exc:
        raise ParseFailure(f"cannot parse tensor {text!r}: {exc}") from exc


def cmd_tensor(args) -> int:
    _, b = resolve(args.bimodule, ("bimodule",))
    T = TensorMonoid(b)
    els = [_tensor_element(T, s) for s in args.elements]
    need = {"eq": 2, "mul": 2, "length": 1, "equidiv": 4}[args.op]
    if len(els) != need:
        raise ParseFailure(f"tensor {args.op} takes {need} elements")
    if args.op == "eq":
        ok = T.tensor_equal(*els)
        print("true" if ok else "false")
        return 0
    if args.op == "mul":
        print(T.render(T.mul(*els)))
        return 0
    if args.op == "length":
        audit = T.normalized_length(els[0], audit=True)
        _emit({"length": audit.length, "ideal_chain": len(audit.chain), "audit_ok": audit.ok})
        return 0
    res = T.equidivide(*els)
    _emit({"side": res.side, "witness": T.render(res.witness)})
    return 0


def _hnn_context(name: str):
    kind, obj = resolve(name, ("presentation", "action"))
    if kind == "presentation":
        return obj, None
    u = UniversalGroup(obj)
    return u.presentation, u


def cmd_hnn(args) -> int:
    if args.op == "embed-check":
        a = _action(args.name)
        if len(components(a)) > 1:
            res = AmalgamEngine.from_action(a).check_embedding(args.max_len)
        else:
            res = check_embedding(UniversalGroup(a), args.max_len)
        out = {"injective": res.ok, "checked": res.checked}
        if res.collision:
            e1, e2, _ = res.collision
            out["collision"] = [render_element(a, e1), render_element(a, e2)]
        _emit(out)
        return 0 if res.ok else 1
    p, _ = _hnn_context(args.name)
    try:
        words = [parse_word(p.oracle, w) for w in args.words]
    except (ValueError, ReesLabError) as exc:
        raise ParseFailure(str(exc)) from exc
    if args.op == "reduce":
        if len(words) != 1:
            raise ParseFailure("hnn reduce takes one word")
        print(render_word(p.oracle, hnn_reduce(p, words[0])))
        return 0
    if len(words) != 2:
        raise ParseFailure("hnn eq takes two words")
    print("true" if hnn_reduce(p, words[0]) == hnn_reduce(p, words[1]) else "false")
    return 0


def _group_arg(ref: str) -> FiniteGroup:
    _, G = resolve(ref, ("group",))
    return G


def cmd_construct(args) -> int:
    if args.what in ("rees", "recurrent"):
        G = _group_arg(args.source)
        if not args.alpha:
            raise ParseFailure("--alpha is required")
        try:
            alpha = [G.index(s) for s in args.alpha.split(",")]
        except ReesLabError as exc:
            raise ParseFailure(str(exc)) from exc
        if len(alpha) != G.order:
            raise ParseFailure("--alpha needs one image per group element, in element order")
        if args.what == "recurrent":
            if len(set(alpha)) != G.order:
                _emit({"ok": False, "message": "over a finite group the recurrent construction needs "
                       "alpha onto (H = G); for a proper self-embedding use an integer HNN presentation"})
                return 1
            inv = [0] * G.order
            for g, v in enumerate(alpha):
                inv[v] = g
            alpha = inv
        a = from_endomorphism(G, alpha, name=args.name or "")
        _emit(dump_action(a))
        return 0
    if args.what == "group-data":
        _, d = resolve(args.source, ("group-data",))
        a = from_group_data_action(d, name=args.name or "")
        _emit(dump_action(a))
        return 0
    _, b = resolve(args.source, ("bimodule",))
    a = from_covering_bimodule(b, name=args.name or "")
    _emit(dump_action(a))
    return 0


def cmd_corpus(args) -> int:
    if args.op == "list":
        if args.json:
            _emit({k: list(v) for k, v in corpus.listing().items()})
        else:
            for k, v in corpus.listing().items():
                print(f"{k}: {', '.join(v)}")
        return 0
    if not args.name:
        raise ParseFailure("corpus show needs a name")
    _, obj = corpus.lookup(args.name)
    _emit(dump(obj, args.name))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reeslab", description="Rees monoids, self-similar actions and their universal groups")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised steps")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "validate a JSON file or a bundled object")
    sp.add_argument("target")
    sp.add_argument("--depth", type=int, default=4)

    sp = add("analyze", cmd_analyze, "property report for an action")
    sp.add_argument("name")
    sp.add_argument("--depth", type=int, default=4)

    sp = add("mul", cmd_mul, "multiply two monoid elements")
    sp.add_argument("name")
    sp.add_argument("e1")
    sp.add_argument("e2")

    sp = add("green", cmd_green, "decide a Green relation")
    sp.add_argument("name")
    sp.add_argument("relation")
    sp.add_argument("e1")
    sp.add_argument("e2")

    sp = add("kernel", cmd_kernel, "kernel and fundamental quotient")
    sp.add_argument("name")

    sp = add("decompose", cmd_decompose, "split an element into component runs")
    sp.add_argument("name")
    sp.add_argument("element")

    sp = add("tensor", cmd_tensor, "tensor monoid operations")
    sp.add_argument("op", choices=["eq", "mul", "length", "equidiv"])
    sp.add_argument("bimodule")
    sp.add_argument("elements", nargs="*")

    sp = add("hnn", cmd_hnn, "universal group word problem")
    sp.add_argument("op", choices=["reduce", "eq", "embed-check"])
    sp.add_argument("name")
    sp.add_argument("words", nargs="*")
    sp.add_argument("--max-len", type=int, default=3)

    sp = add("construct", cmd_construct, "build an action")
    sp.add_argument("what", choices=["rees", "recurrent", "group-data", "covering"])
    sp.add_argument("source", help="group (rees, recurrent), group data or bimodule")
    sp.add_argument("--alpha", help="comma separated images of the group elements, in order")
    sp.add_argument("--name")

    sp = add("corpus", cmd_corpus, "list or show bundled objects")
    sp.add_argument("op", choices=["list", "show"])
    sp.add_argument("name", nargs="?")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except UnknownName as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ReesLabError as exc:
        _emit({"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
