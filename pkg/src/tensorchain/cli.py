"""Command-line front end.

Every command builds one :class:`Report`; ``--kv`` prints its ``key=value``
fields, otherwise the human-readable lines are printed.  Exit codes: 0 ok,
2 parse error, 3 size cap exceeded, 4 bad tensor set, 5 wrong network kind.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import lattice, paths
from .chains import format_chain, reduce
from .errors import CapExceeded, InvalidKey, KindError, NetworkError, ParseError, WordError
from .network import parse_network, serialize_network

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_KEY, EXIT_KIND = 0, 2, 3, 4, 5


@dataclass
class Report:
    fields: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def add(self, key, value):
        self.fields.append((key, _kv_value(value)))

    def render(self, kv: bool) -> str:
        if kv:
            return "".join(f"{k}={v}\n" for k, v in self.fields)
        return "".join(f"{line}\n" for line in self.lines)


def _kv_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _flag(value: bool) -> str:
    return _kv_value(value)


def load_network(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_network(data)


def cmd_validate(args) -> Report:
    net = load_network(args.path)
    rep = Report()
    rep.add("valid", True)
    rep.add("kind", net.kind)
    rep.add("vertices", len(net.vertices))
    rep.add("tensors", len(net.tensors))
    rep.lines.append(f"valid, {len(net.vertices)} vertices, {len(net.tensors)} tensors")
    rep.lines.extend(serialize_network(net).splitlines())
    return rep


def _report_counterexample(rep, triple, prefix="counterexample", fmt=format_chain, op=reduce):
    l1, l2, l3 = triple
    left = op(op(l1, l2), l3)
    right = op(l1, op(l2, l3))
    for name, value in (("l1", l1), ("l2", l2), ("l3", l3), ("left", left), ("right", right)):
        rep.add(f"{prefix}.{name}", fmt(value))
    rep.lines.append(f"{prefix}: l1 = {fmt(l1)}")
    rep.lines.append(f"{prefix}: l2 = {fmt(l2)}")
    rep.lines.append(f"{prefix}: l3 = {fmt(l3)}")
    rep.lines.append(f"{prefix}: (l1 * l2) * l3 = {fmt(left)}")
    rep.lines.append(f"{prefix}: l1 * (l2 * l3) = {fmt(right)}")


def cmd_laws(args) -> Report:
    net = load_network(args.path)
    laws = lattice.check_laws(net, args.max_tensors)
    delta = lattice.delta_violation(net, args.max_tensors)
    sigma = lattice.sigma_violation(net, args.max_tensors)
    rep = Report()
    rep.add("chains", laws.elements)
    rep.add("idempotent", laws.idempotent)
    rep.add("commutative", laws.commutative)
    rep.add("associative", laws.associative)
    rep.lines.append(f"chains: {laws.elements}")
    rep.lines.append(f"idempotent: {_flag(laws.idempotent)}")
    rep.lines.append(f"commutative: {_flag(laws.commutative)}")
    rep.lines.append(f"associative: {_flag(laws.associative)}")
    if laws.associativity_counterexample is None:
        rep.lines.append("no counterexample exists")
    else:
        _report_counterexample(rep, laws.associativity_counterexample)
    rep.add("delta_congruence", delta is None)
    rep.lines.append(f"delta congruence: {_flag(delta is None)}")
    rep.add("sigma_congruence", sigma is None)
    rep.lines.append(f"sigma congruence: {_flag(sigma is None)}")
    if sigma is not None:
        a, b, c, side = sigma
        for name, value in (("a", a), ("b", b), ("c", c)):
            rep.add(f"sigma_violation.{name}", format_chain(value))
        rep.add("sigma_violation.side", side)
        rep.lines.append(
            f"sigma violation ({side}): a = {format_chain(a)}, b = {format_chain(b)}, c = {format_chain(c)}"
        )
    return rep


def _key_arg(text):
    return frozenset(t.strip() for t in text.split(",") if t.strip())


def cmd_class(args) -> Report:
    net = load_network(args.path)
    key = _key_arg(args.tensors)
    members = lattice.delta_class(net, key) if lattice.is_inducible(net, key) else []
    if not members:
        raise InvalidKey("tensor set is not connected in the tensor graph: " + ",".join(sorted(key)))
    top = lattice.local_max(net, key)
    count = lattice.count_minima(net, key)
    rep = Report()
    rep.add("key", ",".join(sorted(key)))
    rep.add("class_size", len(members))
    rep.add("max", format_chain(top))
    rep.add("minima_count", count)
    rep.lines.append(f"key: {','.join(sorted(key))}")
    rep.lines.append(f"class size: {len(members)}")
    rep.lines.append(f"local maximum: {format_chain(top)}")
    rep.lines.append(f"minima (matrix-tree determinant): {count}")
    if len(key) <= lattice.SEARCH_CAP:
        minima = lattice.local_minima(net, key)
        agree = len(minima) == count
        rep.add("minima_listed", len(minima))
        for i, m in enumerate(minima, start=1):
            rep.add(f"minimum.{i}", format_chain(m))
        rep.add("counts_agree", agree)
        rep.lines.append(f"minima (enumerated): {len(minima)}")
        rep.lines.extend(f"  {format_chain(m)}" for m in minima)
        rep.lines.append(f"counts agree: {_flag(agree)}")
        if not agree:
            rep.exit_code = 1
    return rep


def _format_key(k):
    return ",".join(sorted(k)) if k else "empty"


def cmd_quotient(args) -> Report:
    net = load_network(args.path)
    table = lattice.quotient_table(net, args.max_tensors)
    laws = table.laws()
    chains = lattice.enumerate_chains(net, args.max_tensors)
    sizes = {}
    for l in chains:
        k = lattice.chi(l)
        sizes[k] = sizes.get(k, 0) + 1
    rep = Report()
    rep.add("classes", len(table))
    rep.lines.append(f"classes: {len(table)}")
    for k in table.elements:
        rep.add(f"class.{_format_key(k)}", sizes.get(k, 0))
        rep.lines.append(f"  {{{_format_key(k)}}}: {sizes.get(k, 0)} chains")
    rep.add("idempotent", laws.idempotent)
    rep.add("commutative", laws.commutative)
    rep.add("associative", laws.associative)
    rep.lines.append(f"idempotent: {_flag(laws.idempotent)}")
    rep.lines.append(f"commutative: {_flag(laws.commutative)}")
    rep.lines.append(f"associative: {_flag(laws.associative)}")
    if laws.associativity_counterexample is None:
        rep.lines.append("no counterexample exists")
    else:
        _report_counterexample(
            rep, laws.associativity_counterexample, fmt=_format_key, op=lattice.quotient_star
        )
    epi = lattice.chi_is_epimorphism(net, args.max_tensors)
    rep.add("chi_epimorphism", epi)
    rep.lines.append(f"chi is an epimorphism: {_flag(epi)}")
    return rep


def cmd_gis(args) -> Report:
    net = load_network(args.path)
    if not net.is_directed:
        raise KindError("gis needs a directed network")
    rep = Report()
    forms = []
    for i, text in enumerate(args.words, start=1):
        nf = paths.reduce_word(net, paths.parse_word(net, text))
        forms.append(nf)
        rep.add(f"word{i}", " ".join(text.split()))
        rep.add(f"normal_form{i}", paths.format_normal_form(nf))
        rep.lines.append(f"{' '.join(text.split())} = {paths.format_normal_form(nf)}")
    if len(forms) == 2:
        prod = paths.product(*forms)
        rep.add("product", paths.format_normal_form(prod))
        rep.lines.append(f"product = {paths.format_normal_form(prod)}")
    return rep


def cmd_relations(args) -> Report:
    net = load_network(args.path)
    if not net.is_directed:
        raise KindError("relations needs a directed network")
    rel = paths.ck_relations(net)
    rep = Report()
    rep.add("ck1_count", len(rel.ck1))
    rep.add("ck2_count", len(rel.ck2))
    if not rel.ck1:
        rep.lines.append("no CK1 relations")
    for r in rel.ck1:
        rep.add(f"ck1.{r.vertex}", str(r))
        rep.lines.append(f"CK1 {r}")
    for r in rel.ck2:
        rep.add(f"ck2.{r.edge}", str(r))
        rep.add(f"ck2.{r.edge}.holds", r.holds)
        rep.lines.append(f"CK2 {r} ({'holds' if r.holds else 'fails'})")
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "laws": cmd_laws,
    "class": cmd_class,
    "quotient": cmd_quotient,
    "gis": cmd_gis,
    "relations": cmd_relations,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensorchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="network file")
        p.add_argument("--kv", action="store_true", help="print key=value lines")
        return p

    add("validate", "parse a network file and print its canonical form")
    p = add("laws", "check the quasi-semilattice laws of reducing")
    p.add_argument("--max-tensors", type=int, default=lattice.CHAIN_CAP)
    p = add("class", "analyse the delta-class of a tensor set")
    p.add_argument("--tensors", required=True, help="comma-separated tensor ids")
    p = add("quotient", "the quotient by delta and the projection onto it")
    p.add_argument("--max-tensors", type=int, default=lattice.CHAIN_CAP)
    p = add("gis", "normal forms in the graph inverse semigroup")
    p.add_argument("words", nargs="+", metavar="word", help="generator word such as 'e f*'")
    add("relations", "Cuntz-Krieger relations of a directed network")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    if args.command == "gis" and len(args.words) > 2:
        err.write("error: gis takes one or two words\n")
        return EXIT_PARSE
    try:
        report = COMMANDS[args.command](args)
    except (ParseError, WordError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except InvalidKey as exc:
        err.write(f"error: {exc}\n")
        return EXIT_KEY
    except KindError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_KIND
    except NetworkError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    out.write(report.render(args.kv))
    return report.exit_code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
