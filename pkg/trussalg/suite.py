"""
The verification suite run by `trussalg verify-suite`.

Checks are grouped in families (axioms, negative corpus, universal rings,
limits and colimits, exactness, ...). The fixtures taking part in each
family are listed in a YAML manifest (by default `fixtures/suite.yaml`).
Every check contributes one verdict to a `Report`, named
`<family>:<fixture>`, with a witness when it fails.
"""

import itertools
import random
from collections import OrderedDict

import numpy as np
import yaml

from trussalg.errors import TrussAlgError
from trussalg.exactness import (
    barr_equivalence_table,
    exactness_transfer,
    perturbation_sweep,
)
from trussalg.fixtures import SUITE_MANIFEST, load_fixtures
from trussalg.fixtures.catalog import symbolic_fixtures
from trussalg.fixtures.corpus import fork_mutants, mutants
from trussalg.heap_modules import (
    affine_action,
    affine_action_via_pointed,
    affine_basepoint_witness,
    check_hom_consequences,
    delta_violations,
    from_affine,
    hom_from_module,
    is_affine,
    to_affine,
)
from trussalg.iso import hom_morphisms
from trussalg.limits import (
    CoproductHom,
    coequalizer,
    compare_coproducts,
    coproduct,
    equalizer,
    product,
    pullback,
    pushout,
    star_coproduct,
    verify_coequalizer,
    verify_coproduct,
    verify_equalizer,
    verify_product,
    verify_pullback,
    verify_pushout,
)
from trussalg.modules import (
    generated_submodule,
    pointed_to_ring_module,
    ring_module_to_pointed,
    submodule_closure,
    transport_pointed_morphism,
    transport_ring_morphism,
)
from trussalg.morphisms import Morphism
from trussalg.reports import Report
from trussalg.slices import (
    compare_with_slice_coproduct,
    counit_map,
    slice_G,
    unit_map,
    unit_naturality,
)
from trussalg.structure import Structure
from trussalg.trusses import (
    check_dorroh_commutation,
    check_unital_rng_dorroh,
    universal_ring,
)
from trussalg.utils.config import config
from trussalg.utils.debug import logger, logging_scope

# Submodule generation is compared with the closure oracle on at least this
# many generator sets across the pointed fixtures.
GENERATOR_SAMPLES = 100

# Half-width of the integer window on which constructions of one coproduct
# are compared, unless a window is configured.
COMPARISON_WINDOW = 2


def load_manifest(path=None):
    """dict: The suite manifest (fixture names per family)."""
    with open(path or SUITE_MANIFEST, encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def _witness(exc):
    return getattr(exc, "witness", None) or str(exc)


class VerificationSuite:
    """
    Runs families of checks over the fixtures of a registry.

    Families are the methods named `check_<family>`; each yields
    `(fixture, passed, witness)` triples. The order of families, and of
    fixtures within them, is the order of `FAMILIES` and of the manifest, so
    that reports are reproducible.

    Attributes:
        registry (StructureRegistry): The fixtures.
        manifest (dict): The fixture names per family.
    """

    FAMILIES = [
        "axioms",
        "negative",
        "trusses",
        "pointed",
        "modules",
        "homs",
        "slices",
        "parallel_pairs",
        "cospans",
        "spans",
        "products",
        "coproducts",
        "sequences",
        "forks",
    ]

    def __init__(self, registry=None, manifest=None):
        self.registry = registry if registry is not None else load_fixtures()
        self.manifest = manifest if isinstance(manifest, dict) else load_manifest(manifest)
        self.tables = OrderedDict()

    def __repr__(self):
        return f"<VerificationSuite over {len(self.registry)} fixtures>"

    # Selection helpers
    def _names(self, family, kind=None):
        selected = self.manifest.get(family, [])
        if selected == "all":
            return self.registry.of_kind(kind) if kind else self.registry.names
        return [n for n in selected if n in self.registry] if kind is None else [
            n for n in selected if n in self.registry.of_kind(kind)
        ]

    def _objects(self, family, kind):
        return [(name, self.registry.lookup(name, kind)) for name in self._names(family, kind)]

    def _tuples(self, family, kind="morphism"):
        for names in self.manifest.get(family, []):
            yield "/".join(names), [self.registry.lookup(name, kind) for name in names]

    @property
    def targets(self):
        """list<HeapOfModules>: The cone and cocone targets (finite heaps of modules)."""
        return [self.registry[name] for name in self.registry.of_kind("hom")]

    # Running
    @logging_scope("Verification suite", timed=True)
    def run(self, families="all", report=None):
        """
        Run some or all families of checks.

        Args:
            families (str, list<str>): `'all'`, or the families to run.
            report (Report, None): The report to add verdicts to.

        Returns:
            Report: The report, with a summary table of the families run.
        """
        families = self.FAMILIES if families == "all" else [families] if isinstance(families, str) else families
        unknown = set(families).difference(self.FAMILIES)
        if unknown:
            raise ValueError(f"Unknown check families: {', '.join(sorted(unknown))}.")
        report = report or Report("verify-suite")
        summary = []
        for i, family in enumerate(families):
            logger.progress(100 * i // len(families))
            checks = passed = 0
            for fixture, verdict, witness in getattr(self, f"check_{family}")():
                report.add_verdict(f"{family}:{fixture}", verdict, None if verdict else witness)
                checks += 1
                passed += bool(verdict)
            summary.append({"family": family, "checks": checks, "passed": passed})
            logger.info(f"{family}: {passed}/{checks} checks passed.")
        logger.progress(100, complete=True)
        report.add_table("families", summary)
        for name, table in self.tables.items():
            report.add_table(name, table)
        report.add_caveats(logger.current_scope_props["caveats"])
        return report

    def _attempt(self, check, *args):
        try:
            outcome = check(*args)
        except TrussAlgError as exc:
            return False, _witness(exc)
        if isinstance(outcome, tuple):
            return outcome
        return bool(outcome), None

    # Families
    def check_axioms(self):
        """Re-validate every fixture, and the symbolic fixtures on the window."""
        for name in self._names("axioms"):
            obj = self.registry[name]
            if isinstance(obj, (Structure, Morphism)):
                yield (name, *self._attempt(lambda o=obj: o.validate() is not False))
        for name, obj in symbolic_fixtures().items():
            yield (name, *self._attempt(lambda o=obj: o.validate() is not False))

    def check_negative(self):
        """Every mutant of the fixtures must be rejected with a witness."""
        for mutant in mutants(self.registry, seed=config.random_seed):
            rejection = mutant.rejection()
            yield (
                f"{mutant.name}@{','.join(str(p) for p in mutant.position)}",
                rejection is not None and rejection.witness is not None,
                None,
            )

    def check_trusses(self):
        """R(T), the Dorroh commutation, and the unital simplification of R(T)."""

        def certify(truss):
            universal_ring(truss)
            check_dorroh_commutation(truss)
            if truss.is_unital:
                check_unital_rng_dorroh(truss)
            return True

        for name, truss in self._objects("trusses", "truss"):
            yield (name, *self._attempt(certify, truss))

    def check_pointed(self):
        """
        Round trips to R(T)-modules, transport of endomorphisms there and back,
        and generated submodules against the closure oracle.
        """
        pointed = self._objects("pointed", "pointed")
        rng = random.Random(config.random_seed)
        per_module = -(-GENERATOR_SAMPLES // max(len(pointed), 1))

        def round_trip(P):
            module = pointed_to_ring_module(P)
            back = ring_module_to_pointed(module, truss=P.truss)
            if not np.array_equal(back.action_table(), P.action_table()):
                return False, "round trip"
            for f in hom_morphisms(P, P):
                g = transport_pointed_morphism(f, source=module, target=module)
                if transport_ring_morphism(g, source=P, target=P).table != f.table:
                    return False, f.table
            return True, None

        def generated(P):
            elements = P.elements()
            subsets = [[x] for x in elements]
            while len(subsets) < per_module:
                subsets.append(rng.sample(elements, min(2, len(elements))))
            for subset in subsets:
                if generated_submodule(P, subset) != submodule_closure(P, subset):
                    return False, tuple(P.label(x) for x in subset)
            return True, None

        for name, P in pointed:
            yield (f"{name}/round-trip", *self._attempt(round_trip, P))
            yield (f"{name}/generated", *self._attempt(generated, P))

    def check_modules(self):
        """Truss modules give heaps of modules through `[t.n, t.m, m]`."""
        for name, module in self._objects("modules", "module"):
            yield (name, *self._attempt(lambda M=module: check_hom_consequences(hom_from_module(M))))

    def check_homs(self):
        """
        Delta-form, consequences of the axioms and the affine correspondence,
        whose action must not depend on the auxiliary basepoint.
        """

        def affine(hom):
            violations = delta_violations(hom)
            if violations:
                return False, violations[0].witness
            check_hom_consequences(hom)
            extended = to_affine(hom)
            if not is_affine(extended):
                return False, "ring zero acts as basepoint projection"
            if not np.array_equal(from_affine(extended).action_table(), hom.action_table()):
                return False, "affine round trip"
            if hom.is_empty:
                return True, None
            o = extended.truss.ring.basepoint
            closed, composite = affine_action(hom, o), affine_action_via_pointed(hom, o)
            ms = hom.elements()
            for r, m, n in itertools.product(extended.truss.ring.elements(), ms, ms):
                if closed(r, m, n) != composite(r, m, n):
                    return False, (r, hom.label(m), hom.label(n))
            witness = affine_basepoint_witness(hom)
            if witness is not None:
                e, r, m, n = witness
                return False, (hom.label(e), r, hom.label(m), hom.label(n))
            return True, None

        for name, hom in self._objects("homs", "hom"):
            yield (name, *self._attempt(affine, hom))

    def check_slices(self):
        """
        The unit and counit of the slice correspondence are bijections, and
        the unit is natural along the morphisms between the selected heaps.
        """

        def units(hom):
            unit_map(hom)
            if not hom.is_empty:
                counit_map(slice_G(hom))
            return True, None

        homs = self._objects("slices", "hom")
        for name, hom in homs:
            yield (name, *self._attempt(units, hom))
        selected = {id(hom) for _, hom in homs}
        for name in self.registry.of_kind("morphism"):
            f = self.registry[name]
            if id(f.dom) in selected and id(f.cod) in selected:
                yield (f"{name}/naturality", *self._attempt(lambda m=f: unit_naturality(m) is not None or m.dom.is_empty))

    def check_parallel_pairs(self):
        """Coequalizers (both constructions) and equalizers of parallel pairs."""
        for name, (f, g) in self._tuples("parallel_pairs"):
            yield (f"{name}/coequalizer", *self._attempt(self._coequalizer, f, g))
            yield (f"{name}/equalizer", *self._attempt(self._equalizer, f, g))

    def _coequalizer(self, f, g):
        Q, projection = coequalizer(f, g, compare=True)
        return self._verdict(verify_coequalizer(f, g, Q, projection, self.targets))

    def _equalizer(self, f, g):
        E, inclusion = equalizer(f, g)
        return self._verdict(verify_equalizer(f, g, E, inclusion, self.targets))

    def check_cospans(self):
        def certify(f, g):
            P, projections = pullback(f, g)
            return self._verdict(verify_pullback(f, g, P, projections, self.targets))

        for name, (f, g) in self._tuples("cospans"):
            yield (name, *self._attempt(certify, f, g))

    def check_spans(self):
        def certify(f, g):
            P, legs = pushout(f, g)
            return self._verdict(verify_pushout(f, g, P, legs, self.targets))

        for name, (f, g) in self._tuples("spans"):
            yield (name, *self._attempt(certify, f, g))

    def check_products(self):
        def certify(family):
            prod, projections = product(family)
            return self._verdict(verify_product(family, prod, projections, self.targets))

        for name, family in self._tuples("products", "hom"):
            yield (name, *self._attempt(certify, family))

    def check_coproducts(self):
        """
        The universal property of coproducts, their independence of `i0`, and
        their agreement with the slice construction over unital trusses.
        """

        def certify(family):
            coprod, injections = coproduct(family)
            verdict = self._verdict(verify_coproduct(coprod, family, injections, self.targets))
            if not verdict[0] or not isinstance(coprod, CoproductHom):
                return verdict
            window = config.verification_window or COMPARISON_WINDOW
            other, _ = coproduct(family, i0=len(coprod.members) - 1)
            compare_coproducts(coprod, other, window=window)
            if coprod.unital:
                compare_with_slice_coproduct(family, window=window)
            return True, None

        def star(truss):
            coprod, injections = star_coproduct(truss)
            return self._verdict(
                verify_coproduct(coprod, [inj.dom for inj in injections], injections, self.targets)
            )

        for name, family in self._tuples("coproducts", "hom"):
            yield (name, *self._attempt(certify, family))
        trusses = {hom.truss.name: hom.truss for hom in self.targets if hom.truss.is_unital}
        for name, truss in trusses.items():
            yield (f"*+*/{name}", *self._attempt(star, truss))

    @staticmethod
    def _verdict(outcome):
        if outcome["verified"]:
            return True, None
        return False, outcome["failures"][0]

    def check_sequences(self):
        """
        Exactness of heaps against exactness of their pointed parts, for every
        triple of basepoints, and invariance under translations.
        """

        def transfer(f, g):
            triples = itertools.product(f.dom.elements(), f.cod.elements(), g.cod.elements())
            for o_M, o_N, o_P in triples:
                outcome = exactness_transfer(f, g, o_M, o_N, o_P)
                if not outcome["agree"]:
                    return False, (f.dom.label(o_M), f.cod.label(o_N), g.cod.label(o_P))
            return True, None

        def perturbation(f, g):
            outcome = perturbation_sweep(f, g)
            return outcome["invariant"], outcome["failures"][:1] or None

        rows = []
        for name in self._names("sequences", "sequence"):
            sequence = self.registry.lookup(name, "sequence")
            for i, (f, g) in enumerate(zip(sequence.maps, sequence.maps[1:])):
                rows.append({"sequence": name, "position": i + 1, "exact": sequence.exactness()[i].exact})
                yield (f"{name}@{i + 1}/transfer", *self._attempt(transfer, f, g))
                yield (f"{name}@{i + 1}/translations", *self._attempt(perturbation, f, g))
        self.tables["sequences"] = rows

    def check_forks(self):
        """
        Barr-exactness against short exactness of `M -> N x N -> P`, at every
        basepoint, over the forks and their mutants.
        """
        forks = [self.registry.lookup(name, "fork") for name in self._names("forks", "fork")]
        forks += fork_mutants(forks, seed=config.random_seed)
        rows = []

        def equivalence(fork):
            table = barr_equivalence_table(fork)
            rows.append({"fork": fork.name, "barr_exact": bool(table["barr_exact"].iloc[0]) if len(table) else None})
            disagreements = table[~table["agree"]]
            if len(disagreements):
                return False, disagreements["o"].iloc[0]
            return True, None

        for fork in forks:
            yield (fork.name, *self._attempt(equivalence, fork))
        self.tables["forks"] = rows


def run_suite(families="all", registry=None, manifest=None, report=None):
    """
    Run the verification suite (see `VerificationSuite`).

    Returns:
        Report: One verdict per check.
    """
    return VerificationSuite(registry, manifest).run(families, report=report)


__all__ = ["VerificationSuite", "load_manifest", "run_suite"]
