"""``freegroup`` command-line tool.

Exit status: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.  JSON output always has sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graph as gr
from .abelian import abelianize
from .errors import FreeGroupError
from .subgroups import (
    Subgroup,
    conjugacy_classes,
    conjugate_subgroup,
    cyclic_cover,
    embed_in_F2,
    enumerate_index,
    infinite_index_example,
    is_normal,
    normal_subgroup_exists,
    subgroup_exists,
    subgroup_from_generators,
)
from .abelian import quotient_exists
from .words import Alphabet, parse_word, random_word


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _alphabet(args) -> Alphabet:
    if getattr(args, "names_file", None):
        with open(args.names_file) as fh:
            names = fh.read().split()
        if args.rank is not None and args.rank != len(names):
            raise UsageError(f"-n {args.rank} disagrees with {len(names)} names in file")
        return Alphabet(tuple(names))
    if args.rank is None:
        raise UsageError("the alphabet rank (-n) is required")
    if args.rank > 26:
        raise UsageError("rank > 26 requires --names-file")
    return Alphabet.default(args.rank)


def _words(args, alphabet, texts=None):
    return [parse_word(t, alphabet) for t in (args.words if texts is None else texts)]


def _report(s: Subgroup) -> str:
    idx = s.index if s.is_finite_index else "infinite"
    normal = "true" if is_normal(s) else "false"
    basis = ", ".join(str(w) for w in s.basis) or "(empty)"
    return f"index: {idx}\nrank: {s.rank}\nnormal: {normal}\nbasis: {basis}\n"


def _emit_subgroup(s: Subgroup, fmt: str) -> str:
    if fmt == "json":
        return _dumps(s.to_json()) + "\n"
    if fmt == "dot":
        return gr.to_dot(s.graph, s.alphabet)
    return _report(s)


def _subgroup_arg(args, alphabet) -> Subgroup:
    if getattr(args, "subgroup_file", None):
        with open(args.subgroup_file) as fh:
            return Subgroup.from_json(fh.read(), alphabet)
    return subgroup_from_generators(_words(args, alphabet, args.gens), alphabet)


def cmd_reduce(args):
    alphabet = _alphabet(args)
    words = _words(args, alphabet)
    if args.format == "json":
        return "".join(_dumps(w.to_json()) + "\n" for w in words)
    return "".join(f"{w}\n" for w in words)


def cmd_random(args):
    alphabet = _alphabet(args)
    w = random_word(args.length, alphabet, args.seed)
    return _dumps(w.to_json()) + "\n" if args.format == "json" else f"{w}\n"


def cmd_abelianize(args):
    alphabet = _alphabet(args)
    vecs = [list(abelianize(w)) for w in _words(args, alphabet)]
    if args.format == "json":
        return "".join(_dumps(v) + "\n" for v in vecs)
    return "".join(" ".join(map(str, v)) + "\n" for v in vecs)


def cmd_subgroup(args):
    alphabet = _alphabet(args)
    s = subgroup_from_generators(_words(args, alphabet), alphabet)
    return _emit_subgroup(s, args.format)


def cmd_member(args):
    alphabet = _alphabet(args)
    s = _subgroup_arg(args, alphabet)
    results = [w in s for w in _words(args, alphabet)]
    if args.format == "json":
        return _dumps(results) + "\n"
    return "".join(("true" if r else "false") + "\n" for r in results)


def _census(args):
    alphabet = _alphabet(args)
    subs = enumerate_index(alphabet.rank, args.index, cap=args.cap, alphabet=alphabet)
    classes = conjugacy_classes(subs)
    class_of = {s.key: i for i, c in enumerate(classes) for s in c}
    return subs, classes, class_of


def cmd_enumerate(args):
    subs, classes, class_of = _census(args)
    normal = [is_normal(s) for s in subs]
    if args.format == "json":
        records = []
        for s, nrm in zip(subs, normal):
            rec = s.to_json(normal=nrm)
            rec["class"] = class_of[s.key]
            records.append(rec)
        return _dumps({
            "ambientRank": args.rank,
            "index": args.index,
            "count": len(subs),
            "classes": len(classes),
            "normalCount": sum(normal),
            "subgroups": records,
        }) + "\n"
    lines = [f"subgroups: {len(subs)}", f"classes: {len(classes)}",
             f"normal: {sum(normal)}"]
    for i, (s, nrm) in enumerate(zip(subs, normal)):
        basis = ", ".join(str(w) for w in s.basis)
        lines.append(f"{i}\tclass {class_of[s.key]}\t{'normal' if nrm else '-'}\t{basis}")
    return "\n".join(lines) + "\n"


def cmd_classes(args):
    subs, classes, _ = _census(args)
    if args.format == "json":
        return _dumps([[[str(w) for w in s.basis] for s in c] for c in classes]) + "\n"
    lines = []
    for i, c in enumerate(classes):
        lines.append(f"class {i} (size {len(c)}):")
        lines.extend("  " + ", ".join(str(w) for w in s.basis) for s in c)
    return "\n".join(lines) + "\n"


def cmd_normal(args):
    alphabet = _alphabet(args)
    s = subgroup_from_generators(_words(args, alphabet), alphabet)
    r = is_normal(s, args.method)
    return _dumps(r) + "\n" if args.format == "json" else ("true\n" if r else "false\n")


def cmd_conjugate(args):
    alphabet = _alphabet(args)
    s = subgroup_from_generators(_words(args, alphabet), alphabet)
    return _emit_subgroup(conjugate_subgroup(s, parse_word(args.by, alphabet)), args.format)


def cmd_construct(args):
    if args.kind == "cyclic-cover":
        if args.rank is None or args.k is None:
            raise UsageError("cyclic-cover needs -n and -k")
        s = cyclic_cover(args.rank, args.k, _alphabet(args))
    elif args.kind == "embed-f2":
        if args.m is None:
            raise UsageError("embed-f2 needs -m")
        s = embed_in_F2(args.m)
    else:
        if args.r is None:
            raise UsageError("infinite-example needs -r")
        s = infinite_index_example(args.r)
    return _emit_subgroup(s, args.format)


def cmd_exists(args):
    if args.ambient is None or args.target is None:
        raise UsageError("exists needs --ambient and --target")
    a, t = args.ambient, args.target
    if args.kind == "subgroup":
        r = subgroup_exists(a, t)
    elif args.kind == "normal":
        r = normal_subgroup_exists(t, a)
    else:
        r = quotient_exists(a, t)
    return _dumps(r) + "\n" if args.format == "json" else ("true\n" if r else "false\n")


def cmd_export(args):
    alphabet = _alphabet(args)
    s = subgroup_from_generators(_words(args, alphabet), alphabet)
    if args.format == "dot":
        return gr.to_dot(s.graph, alphabet)
    return _dumps(gr.to_json(s.graph)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freegroup", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--rank", type=int, help="rank of the ambient free group")
    common.add_argument("--names-file", help="whitespace-separated generator names")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, formats=("text", "json"), help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.set_defaults(func=func)
        return p

    p = verb("reduce", cmd_reduce, help="freely reduce words")
    p.add_argument("words", nargs="+")
    p = verb("random", cmd_random, help="seeded random reduced word")
    p.add_argument("-l", "--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p = verb("abelianize", cmd_abelianize, help="exponent-sum vectors")
    p.add_argument("words", nargs="+")
    p = verb("subgroup", cmd_subgroup, ("text", "json", "dot"), help="build and report a subgroup")
    p.add_argument("words", nargs="*")
    p = verb("member", cmd_member, help="membership of words in a subgroup")
    p.add_argument("-g", "--gen", dest="gens", action="append", default=[])
    p.add_argument("--subgroup-file", help="subgroup JSON instead of -g generators")
    p.add_argument("words", nargs="+")
    for name, func in (("enumerate", cmd_enumerate), ("classes", cmd_classes)):
        p = verb(name, func, help="finite-index subgroup census")
        p.add_argument("-e", "--index", type=int, required=True)
        p.add_argument("--cap", type=int, help="override FREEGROUP_ENUM_CAP")
    p = verb("normal", cmd_normal, help="normality test")
    p.add_argument("--method", choices=("rebase", "conjugation"))
    p.add_argument("words", nargs="*")
    p = verb("conjugate", cmd_conjugate, ("text", "json", "dot"), help="conjugate a subgroup")
    p.add_argument("--by", required=True)
    p.add_argument("words", nargs="*")
    p = verb("construct", cmd_construct, ("text", "json", "dot"), help="built-in subgroups")
    p.add_argument("kind", choices=("cyclic-cover", "embed-f2", "infinite-example"))
    p.add_argument("-k", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-r", type=int)
    p = verb("exists", cmd_exists, help="existence criteria")
    p.add_argument("kind", choices=("subgroup", "normal", "quotient"))
    p.add_argument("--ambient", type=int, help="rank of the ambient group")
    p.add_argument("--target", "--sub", "--quotient", dest="target", type=int,
                   help="rank of the sought subgroup or quotient")
    p = verb("export", cmd_export, ("json", "dot"), help="subgroup graph as JSON or DOT")
    p.add_argument("words", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except FreeGroupError as exc:
        sys.stderr.write(_dumps({"error": exc.kind, "message": str(exc)}) + "\n")
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(_dumps({"error": "io", "message": str(exc)}) + "\n")
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
