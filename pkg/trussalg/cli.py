"""
The `trussalg` command line.

    trussalg validate [FILE]
    trussalg derive TARGET NAME [NAME ...]
    trussalg check-exact NAME [NAME]
    trussalg check-barr FORK [--all-basepoints]
    trussalg verify-suite [FAMILY] [FILE]
    trussalg iso-search A B

Every command loads a structure file (`--file`, or the shipped fixtures),
prints a report on stdout (`--json` for machine readable output) and exits
with status 0 when every verdict holds, 1 when one does not, and 2 on errors.
"""

import argparse
import inspect
import sys
from collections import OrderedDict

from trussalg.dsl.printer import StructurePrinter
from trussalg.errors import NotIsomorphic, StructureSyntaxError, TrussAlgError, WitnessedError
from trussalg.exactness import (
    barr_conditions,
    barr_equivalence,
    barr_equivalence_table,
    check_exact_at,
    exactness_transfer,
    is_barr_exact,
)
from trussalg.fixtures import load_fixtures
from trussalg.heap_modules import to_affine
from trussalg.iso import iso_search
from trussalg.limits import (
    coequalizer,
    coproduct,
    equalizer,
    hom_quotient,
    product,
    pullback,
    pushout,
    verify_coequalizer,
    verify_coproduct,
    verify_equalizer,
    verify_product,
    verify_pullback,
    verify_pushout,
)
from trussalg.modules import free_pointed_module
from trussalg.registry import StructureRegistry
from trussalg.reports import FORMATTERS, Report
from trussalg.slices import slice_G, slice_M, unit_map
from trussalg.suite import VerificationSuite
from trussalg.trusses import dorroh_ring, unital_truss_extension, universal_ring, validate_truss_morphism
from trussalg.utils.config import config
from trussalg.utils.debug import logger, logging_scope

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


# Argument parsing


def _common_options():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("-f", "--file", help="The structure file (default: the shipped fixtures).")
    parser.add_argument(
        "--window", type=int, help="Half-width of the integer window used for symbolic structures."
    )
    parser.add_argument("--seed", type=int, help="The seed of the negative corpus and of sampling.")
    parser.add_argument("--basepoint", help="The basepoint (an element label) where one is needed.")
    parser.add_argument("--json", action="store_true", help="Render the report as JSON.")
    parser.add_argument(
        "--format", choices=sorted(FORMATTERS), default=None, help="The report format (default: text)."
    )
    return parser


DERIVE_TARGETS = [
    "rt",
    "rtu",
    "tu",
    "free",
    "quotient",
    "product",
    "equalizer",
    "pullback",
    "coproduct",
    "coequalizer",
    "pushout",
    "slice-m",
    "slice-g",
    "affine",
]


def build_parser():
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="trussalg", description="Computer algebra for heaps, trusses and their modules."
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    validate = commands.add_parser("validate", parents=[common], help="Parse and validate a structure file.")
    validate.add_argument("path", nargs="?", help="The structure file.")
    validate.add_argument("--dump", action="store_true", help="Print the file back from the validated tables.")

    derive = commands.add_parser("derive", parents=[common], help="Build a derived structure.")
    derive.add_argument("target", choices=DERIVE_TARGETS)
    derive.add_argument("names", nargs="+", help="Registered structures or morphisms (or element labels).")
    derive.add_argument("--symbols", nargs="+", default=["*"], help="Generators of a free module.")
    derive.add_argument("--unital", action="store_true", help="Build the unital free module.")
    derive.add_argument("--i0", type=int, default=0, help="The distinguished member of a coproduct.")

    exact = commands.add_parser("check-exact", parents=[common], help="Check exactness of a sequence.")
    exact.add_argument("names", nargs="+", help="A sequence, or two composable morphisms.")
    exact.add_argument(
        "--all-basepoints", action="store_true", help="Compare with the pointed parts at every basepoint triple."
    )

    barr = commands.add_parser("check-barr", parents=[common], help="Check Barr-exactness of a fork.")
    barr.add_argument("fork")
    barr.add_argument("--all-basepoints", action="store_true", help="Compare at every basepoint of N.")

    suite = commands.add_parser("verify-suite", parents=[common], help="Run the verification suite.")
    suite.add_argument("family", nargs="?", default="all", choices=["all"] + VerificationSuite.FAMILIES)
    suite.add_argument("path", nargs="?", help="The structure file.")
    suite.add_argument("--manifest", help="The suite manifest (default: the shipped one).")

    iso = commands.add_parser("iso-search", parents=[common], help="Search for an isomorphism.")
    iso.add_argument("first")
    iso.add_argument("second")
    return parser


# Commands


class CommandRunner:
    """
    Runs one parsed command against a registry, producing a `Report`.

    Attributes:
        args (argparse.Namespace): The parsed arguments.
        registry (StructureRegistry): The loaded structures.
        report (Report): The report being built.
    """

    def __init__(self, args, registry):
        self.args = args
        self.registry = registry
        self.report = Report(
            ["trussalg", args.command] + [str(a) for a in _positionals(args)],
            defaults=OrderedDict(
                [("window", config.verification_window), ("seed", config.random_seed)]
            ),
        )

    def run(self):
        getattr(self, "do_" + self.args.command.replace("-", "_"))()
        return self.report

    # Helpers
    def lookup(self, name, kind=None):
        return self.registry.lookup(name, kind)

    def basepoint(self, structure, default=None):
        """The id of `--basepoint` in `structure`, or `default`."""
        if self.args.basepoint is None:
            return default
        return structure.index(self.args.basepoint)

    def dump(self, name, obj):
        """Add a structure file dump of `obj`, or its description when it has none."""
        names = {id(o): n for n, o in self.registry.items()}
        names[id(obj)] = name
        try:
            text = StructurePrinter(names).render(name, obj)
        except (TypeError, ValueError, TrussAlgError):
            text = obj.describe() if hasattr(obj, "describe") else repr(obj)
        self.report.add_dump(name, text)

    def verified(self, outcome):
        """Add the verdict of a universal property certification."""
        failures = outcome["failures"]
        self.report.add_verdict(
            f"{outcome['shape']} universal property ({outcome['cones']} cones)",
            outcome["verified"],
            failures[0] if failures else None,
        )

    @property
    def targets(self):
        return [self.registry[n] for n in self.registry.of_kind("hom")]

    # validate
    def do_validate(self):
        for name in self.registry.names:
            self.report.add_verdict(name, True)
        if self.args.dump:
            self.report.add_dump("file", self.registry.dumps())

    # derive
    def do_derive(self):
        derive = getattr(self, "derive_" + self.args.target.replace("-", "_"))
        try:
            inspect.signature(derive).bind(*self.args.names)
        except TypeError:
            raise ValueError(
                f"Wrong number of names for `derive {self.args.target}`: {' '.join(self.args.names)}."
            ) from None
        derive(*self.args.names)

    def _truss(self, name):
        truss = self.lookup(name, "truss")
        o = self.basepoint(truss, truss.default_basepoint() if not truss.is_empty else None)
        if o is not None:
            self.report.defaults["basepoint"] = truss.label(o)
        return truss, o

    def certify(self, verdict, check):
        """Add `verdict`, failing with the witness when `check` raises a witnessed error."""
        try:
            check()
        except WitnessedError as exc:
            self.report.add_verdict(verdict, False, exc.witness)
            return False
        return self.report.add_verdict(verdict, True)

    def derive_rt(self, name):
        truss, o = self._truss(name)
        ring, iota = universal_ring(truss, o, validate=False)
        self.certify("ring axioms", ring.validate)
        self.certify("iota is a truss morphism", lambda: validate_truss_morphism(iota))
        self.dump(ring.name, ring)

    def derive_rtu(self, name):
        truss, o = self._truss(name)
        ring, _ = universal_ring(truss, o, validate=False)
        extended = dorroh_ring(ring, validate=False)
        self.certify("unital ring axioms", extended.validate)
        self.dump(f"{ring.name}_u", extended)

    def derive_tu(self, name):
        truss, o = self._truss(name)
        ext, _ = unital_truss_extension(truss, o, validate=False)
        self.certify("unital truss axioms", lambda: unital_truss_extension(truss, o))
        self.dump(ext.name or f"{truss.name}_u", ext)

    def derive_free(self, name):
        truss, o = self._truss(name)
        free, insertion = free_pointed_module(truss, tuple(self.args.symbols), o=o, unital=self.args.unital)
        self.report.add_verdict("pointed module axioms", True)
        self.report.add_table(
            "basis", [{"symbol": s, "element": str(x)} for s, x in insertion.items()]
        )
        self.dump(free.name or f"F({truss.name})", free)

    def derive_quotient(self, name, *labels):
        hom = self.lookup(name, "hom")
        subset = {hom.index(label) for label in labels}
        quotient, _ = hom_quotient(hom, subset)
        self.dump(quotient.name, quotient)
        self.report.add_verdict("quotient", True)

    def derive_product(self, *names):
        family = [self.lookup(n, "hom") for n in names]
        prod, projections = product(family)
        self.verified(verify_product(family, prod, projections, self.targets))
        self.dump(prod.name, prod)

    def derive_coproduct(self, *names):
        family = [self.lookup(n, "hom") for n in names]
        self.report.defaults["i0"] = self.args.i0
        coprod, injections = coproduct(family, i0=self.args.i0)
        self.verified(verify_coproduct(coprod, family, injections, self.targets))
        self.dump(coprod.name or "coproduct", coprod)

    def _pair(self, first, second):
        return self.lookup(first, "morphism"), self.lookup(second, "morphism")

    def derive_equalizer(self, first, second):
        f, g = self._pair(first, second)
        E, inclusion = equalizer(f, g)
        self.verified(verify_equalizer(f, g, E, inclusion, self.targets))
        self.dump(E.name, E)

    def derive_pullback(self, first, second):
        f, g = self._pair(first, second)
        P, projections = pullback(f, g)
        self.verified(verify_pullback(f, g, P, projections, self.targets))
        self.dump(P.name, P)

    def derive_coequalizer(self, first, second):
        f, g = self._pair(first, second)
        e = self.basepoint(f.cod)
        Q, projection = coequalizer(f, g, e=e, compare=True)
        self.report.add_verdict("coequalizer constructions agree", True)
        self.verified(verify_coequalizer(f, g, Q, projection, self.targets))
        self.dump(Q.name, Q)

    def derive_pushout(self, first, second):
        f, g = self._pair(first, second)
        P, legs = pushout(f, g, e=self.basepoint(f.dom))
        self.verified(verify_pushout(f, g, P, legs, self.targets))
        self.dump(P.name or "pushout", P)

    def derive_slice_g(self, name):
        hom = self.lookup(name, "hom")
        slice_object = slice_G(hom, self.basepoint(hom)).validate()
        self.report.add_verdict("projection onto R(T)", True)
        self.dump(slice_object.name, slice_object.pointed)

    def derive_slice_m(self, name):
        hom = self.lookup(name, "hom")
        e = self.basepoint(hom)
        fiber = slice_M(slice_G(hom, e))
        zeta = unit_map(hom, e)
        self.report.add_verdict("unit is bijective onto the fiber", zeta.is_injective())
        self.dump(fiber.name, fiber)

    def derive_affine(self, name):
        hom = self.lookup(name, "hom")
        o = None
        if self.args.basepoint is not None:
            o = hom.truss.index(self.args.basepoint)
            self.report.defaults["basepoint"] = hom.truss.label(o)
        affine = to_affine(hom, o)
        self.dump(affine.name, affine)
        self.report.add_verdict("affine", True)

    # check-exact
    def do_check_exact(self):
        names = self.args.names
        if len(names) == 1:
            maps = self.lookup(names[0], "sequence").maps
        else:
            maps = [self.lookup(n, "morphism") for n in names]
        for i, (f, g) in enumerate(zip(maps, maps[1:])):
            exactness = check_exact_at(f, g)
            witness = exactness.witnesses[0] if exactness.witnesses else exactness.note
            self.report.add_verdict(
                f"exact at {f.cod.name} ({i + 1})",
                exactness.exact,
                g.cod.label(witness) if isinstance(witness, int) else witness,
            )
            if self.args.all_basepoints:
                self._transfer_table(i + 1, f, g)

    def _transfer_table(self, position, f, g):
        rows = []
        for o_M in f.dom.elements():
            for o_N in f.cod.elements():
                for o_P in g.cod.elements():
                    outcome = exactness_transfer(f, g, o_M, o_N, o_P)
                    rows.append(
                        OrderedDict(
                            [
                                ("o_M", f.dom.label(o_M)),
                                ("o_N", f.cod.label(o_N)),
                                ("o_P", g.cod.label(o_P)),
                                ("heap_exact", outcome["heap_exact"]),
                                ("module_exact", outcome["module_exact"]),
                                ("agree", outcome["agree"]),
                            ]
                        )
                    )
        self.report.add_verdict(
            f"pointed parts agree ({position})", all(r["agree"] for r in rows)
        )
        self.report.add_table(f"basepoints ({position})", rows)

    # check-barr
    def do_check_barr(self):
        fork = self.lookup(self.args.fork, "fork")
        for condition, value in barr_conditions(fork).items():
            self.report.add_verdict(condition, value)
        barr = is_barr_exact(fork)
        if self.args.all_basepoints:
            table = barr_equivalence_table(fork)
            self.report.add_table("basepoints", table)
            self.report.add_verdict("short exact iff Barr-exact", bool(table["agree"].all()))
        else:
            o = self.basepoint(fork.N)
            outcome = barr_equivalence(fork, o)
            self.report.defaults["basepoint"] = outcome["o"]
            self.report.add_verdict("short exact iff Barr-exact", outcome["agree"])
        self.report.add_verdict("barr-exact", barr)

    # verify-suite
    def do_verify_suite(self):
        VerificationSuite(self.registry, self.args.manifest).run(self.args.family, report=self.report)

    # iso-search
    def do_iso_search(self):
        A, B = self.lookup(self.args.first), self.lookup(self.args.second)
        try:
            iso = iso_search(A, B)
        except NotIsomorphic:
            self.report.add_verdict("isomorphic", False)
            return
        self.report.add_verdict("isomorphic", True)
        self.report.add_table(
            "isomorphism",
            [{A.name: A.label(x), B.name: B.label(iso(x))} for x in A.elements()],
        )


def _positionals(args):
    out = []
    for key in ("target", "names", "fork", "family", "first", "second", "path"):
        value = getattr(args, key, None)
        if value is None:
            continue
        out.extend(value if isinstance(value, list) else [value])
    return out


def _load(args):
    path = getattr(args, "path", None) or args.file
    if path is None:
        return load_fixtures()
    registry = StructureRegistry()
    registry.register_from_file(path)
    return registry


@logging_scope("trussalg")
def run(args):
    """
    Run parsed arguments, applying `--window` and `--seed` for the duration
    of the command.

    Returns:
        Report: The report, including the caveats raised while running.
    """
    previous = {key: getattr(config, key) for key in ("verification_window", "random_seed")}
    try:
        if args.window is not None:
            config.verification_window = args.window
        if args.seed is not None:
            config.random_seed = args.seed
        report = CommandRunner(args, _load(args)).run()
    finally:
        for key, value in previous.items():
            setattr(config, key, value)
    report.add_caveats(logger.current_scope_props["caveats"])
    return report


def main(argv=None):
    """The console entry point; returns the exit status."""
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except (TrussAlgError, StructureSyntaxError, ValueError, KeyError, OSError) as exc:
        message = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        print(f"trussalg: error: {message}", file=sys.stderr)
        return EXIT_ERROR
    print(report.render("json" if args.json else args.format or "text"))
    return EXIT_OK if report.passed else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
