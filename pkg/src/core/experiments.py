"""
Experiment runner for FolnerLab.

Every CLI command goes through ExperimentRunner: inputs are canonicalized,
looked up in the result cache, computed on a miss and stored as one record
that embeds the resolved configuration.
"""

import logging
from datetime import datetime
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..amen.folner import FolnerCertificate, Mode, certify, default_exclusion
from ..amen.freewords import free_words_check, generator_pair
from ..amen.profile import SAMPLERS, profile_uniform
from ..amen.search import min_folner_search
from ..config import RunConfig
from ..data.cache import ResultCache, record_key
from ..errors import BudgetExceeded, CertificateRefused, ExtensionUnavailable, GroupSpecError, IdentityInput, InputError
from ..fields.gf2k import Gf2kField
from ..fields.tower import FieldTower, get_tower
from ..folog.ast import Formula, is_sentence
from ..folog.evaluator import evaluate
from ..folog.printer import print_formula
from ..groups.handles import GElem, GroupHandle, Sl2Group
from ..groups.ops import conjugacy_partition
from ..groups.spec import parse_family_spec, parse_group_spec
from ..matgrp.centralizer import centralizer_bruteforce, centralizer_structural
from ..matgrp.classes import class_growth_along_tower, ct_check, icc_witness_family
from ..matgrp.jordan import jordan_form, require_char2
from ..output.export import OutputExporter
from ..utils.helpers import format_fraction, parse_fraction
from ..utils.logging import log_section
from .paths import PathManager

logger = logging.getLogger(__name__)


def parse_elements(G: GroupHandle, text: Optional[str]) -> List[GElem]:
    """Semicolon separated elements; nothing means the generators of G."""
    if text is None or not text.strip():
        return G.generators()
    return [G.parse(part) for part in text.split(";") if part.strip()]


def _require_sl2(G: GroupHandle) -> Sl2Group:
    if not isinstance(G, Sl2Group):
        raise GroupSpecError(f"This command needs an sl2:... group, got {G.spec}")
    return G


class ExperimentRunner:
    """Runs FolnerLab commands with caching and export."""

    def __init__(self, config: RunConfig, use_cache: bool = True):
        """
        Initialize experiment runner.

        Args:
            config: Resolved run configuration
            use_cache: Look up and store records in the result cache
        """
        self.config = config
        self.use_cache = use_cache
        self.start_time = datetime.now()

        self.paths = PathManager(config.out_dir)
        self.cache = ResultCache(self.paths.get_records_dir()) if use_cache else None
        self.exporter = OutputExporter(self.paths)

    @cached_property
    def tower(self) -> FieldTower:
        """The TOWER_LEVELS tower."""
        return get_tower(tuple(self.config.tower_levels))

    def tower_for(self, *degrees: int) -> Optional[FieldTower]:
        """The configured tower when it has every degree; None falls back to two-level towers."""
        if set(degrees) <= set(self.config.tower_levels):
            return self.tower
        logger.debug(f"Degrees {sorted(set(degrees))} are not all in TOWER_LEVELS {self.config.tower_levels}")
        return None

    # -- record plumbing ----------------------------------------------------

    def run(self, command: str, inputs: Dict[str, Any], compute: Callable[[], Dict[str, Any]]) -> Tuple[Dict[str, Any], bool]:
        """
        Return the cached record of (command, inputs, config) or compute it.

        Returns:
            (record, whether it came from the cache)
        """
        config_hash = self.config.config_hash()
        if self.cache is not None:
            cached = self.cache.get(record_key(command, inputs, config_hash))
            if cached is not None:
                return cached, True

        log_section(logger, f"{command}: computing", self.start_time)
        started = datetime.now()
        outputs = compute()
        log_section(logger, f"{command}: done", self.start_time)

        if self.cache is None:
            return {"command": command, "inputs": inputs, "config": self.config.to_dict(), "outputs": outputs}, False
        record = self.cache.put(command, inputs, self.config.to_dict(), config_hash, outputs, started_at=started)
        return record, False

    # -- matgrp -------------------------------------------------------------

    def centralizer(self, group: str, element: str) -> Tuple[Dict[str, Any], bool]:
        G = _require_sl2(parse_group_spec(group))
        g = G.parse(element)
        if g.is_identity():
            raise IdentityInput("The centralizer of the identity is the whole group")
        inputs = {"group": G.spec, "element": G.format(g)}

        def compute():
            brute = centralizer_bruteforce(g, self.config.enum_budget)
            members = sorted(brute, key=G.key)
            abelian = all(x * y == y * x for i, x in enumerate(members) for y in members[i + 1:])
            report = {
                "group": G.spec,
                "element": G.format(g),
                "bruteforce_order": len(brute),
                "abelian": abelian,
                "non_ct_witness": not abelian,
            }
            if isinstance(G.field, Gf2kField):
                description = centralizer_structural(g)
                report.update(description.to_dict())
                report["agreement"] = description.member_set() == brute
                report["jordan"] = self._jordan(g)
            else:
                report.update({"kind": None, "order": len(brute), "agreement": None, "jordan": None})
            return report

        return self.run("centralizer", inputs, compute)

    def _jordan(self, g) -> Optional[Dict[str, Any]]:
        k = g.field.degree
        try:
            return jordan_form(g, self.tower_for(k, 2 * k)).to_dict()
        except ExtensionUnavailable as e:
            logger.warning(f"No Jordan form for {g!r}: {e}")
            return None

    def ct(self, group: str, exhaustive: bool = False) -> Tuple[Dict[str, Any], bool]:
        G = _require_sl2(parse_group_spec(group))
        inputs = {"group": G.spec, "exhaustive": exhaustive}
        return self.run("ct", inputs, lambda: ct_check(G.field, self.config.enum_budget, exhaustive).to_dict())

    def icc(self, group: str, element: str, count: int = 3, degrees: Optional[Sequence[int]] = None) -> Tuple[Dict[str, Any], bool]:
        G = _require_sl2(parse_group_spec(group))
        g = G.parse(element)
        inputs = {"group": G.spec, "element": G.format(g), "count": count, "degrees": list(degrees or [])}

        def compute():
            k = require_char2(g).degree
            # too small a field escalates along the configured tower
            family = icc_witness_family(g, count, self.tower_for(k))
            degree = family[0].field.degree if family else k
            report = {
                "group": G.spec,
                "element": G.format(g),
                "degree": degree,
                "escalated": degree != k,
                "conjugates": [repr(m) for m in family],
            }
            if degrees:
                tower = self.tower_for(*degrees)
                sizes = class_growth_along_tower(g, degrees, tower=tower, budget=self.config.enum_budget)
                report["growth"] = [{"degree": d, "class_size": s} for d, s in zip(degrees, sizes)]
            return report

        return self.run("icc", inputs, compute)

    def classes(self, group: str) -> Tuple[Dict[str, Any], bool]:
        G = parse_group_spec(group)
        inputs = {"group": G.spec}

        def compute():
            partition = conjugacy_partition(G, self.config.enum_budget)
            order = sum(len(c) for c in partition)
            classes = [
                {
                    "representative": G.format(min(c, key=G.key)),
                    "size": len(c),
                    "centralizer_order": order // len(c),
                }
                for c in partition
            ]
            return {"group": G.spec, "order": order, "count": len(classes), "classes": classes}

        return self.run("classes", inputs, compute)

    # -- amen ---------------------------------------------------------------

    def folner(
        self,
        group: str,
        mode: Mode,
        epsilon: str,
        S: Optional[str] = None,
        T: Optional[str] = None,
        min_size: int = 1,
        exclude_identity: Optional[bool] = None,
    ) -> Tuple[Dict[str, Any], bool]:
        """
        Certify a given T, or search the least one.

        The printed certificate is re-read from its serialized form and
        verified again before the record is stored.
        """
        G = parse_group_spec(group)
        eps = parse_fraction(epsilon)
        S_elems = parse_elements(G, S)
        exclude = exclude_identity if exclude_identity is not None else self.config.exclude_identity
        inputs = {
            "group": G.spec,
            "mode": mode.value,
            "epsilon": format_fraction(eps),
            "S": [G.format(x) for x in S_elems],
            "T": None if T is None else [G.format(x) for x in parse_elements(G, T)],
            "min_size": min_size,
            "exclude_identity": exclude,
        }

        def compute():
            if T is not None:
                cert = certify(G, S_elems, parse_elements(G, T), eps, mode, exclude_identity=default_exclusion(mode, exclude))
                outputs = {"status": "certified", "certificate": cert.to_dict(G)}
            else:
                result = min_folner_search(
                    G, S_elems, eps, mode,
                    min_size=min_size,
                    budget=self.config.subset_budget,
                    exclude_identity=exclude,
                )
                outputs = result.to_dict(G)
            if outputs.get("certificate"):
                self._reverify(outputs["certificate"], G)
            return outputs

        command = "folner" if mode is Mode.TRANSLATION else "cfolner"
        return self.run(command, inputs, compute)

    def folner_sweep(
        self,
        groups: Sequence[str],
        mode: Mode,
        epsilons: Sequence[str],
        S: Optional[str] = None,
        T: Optional[str] = None,
        min_size: int = 1,
        exclude_identity: Optional[bool] = None,
    ) -> Tuple[Dict[str, Any], bool]:
        """
        Run folner/cfolner for every group and epsilon.

        Each cell is cached as its own record. Refusals and exhausted budgets
        are reported per cell instead of ending the sweep.

        Returns:
            (sweep record, whether every cell came from the cache)
        """
        command = "folner" if mode is Mode.TRANSLATION else "cfolner"
        epsilons = [format_fraction(parse_fraction(e)) for e in epsilons]
        cells, all_cached = [], True
        for group in groups:
            for epsilon in epsilons:
                cell = {"group": group, "epsilon": epsilon}
                try:
                    record, cached = self.folner(
                        group, mode, epsilon, S=S, T=T, min_size=min_size, exclude_identity=exclude_identity
                    )
                except CertificateRefused as e:
                    cached = False
                    defect = None if e.defect is None else format_fraction(e.defect)
                    cell.update(status="refused", size=None, defect=defect)
                except BudgetExceeded as e:
                    cached = False
                    logger.warning(f"{command} {group} at epsilon {cell['epsilon']}: {e}")
                    best = getattr(e.best_so_far, "certificate", None)
                    cell.update(
                        status="over_budget",
                        size=best.size if best is not None else None,
                        defect=format_fraction(best.defect) if best is not None else None,
                    )
                else:
                    cert = record["outputs"].get("certificate")
                    cell.update(
                        status=record["outputs"]["status"],
                        size=cert["size"] if cert else None,
                        defect=cert["defect"] if cert else None,
                    )
                all_cached = all_cached and cached
                cells.append(cell)

        inputs = {"groups": list(groups), "mode": mode.value, "epsilons": epsilons}
        record = {
            "command": f"{command}_sweep",
            "inputs": inputs,
            "config": self.config.to_dict(),
            "outputs": {"mode": mode.value, "cells": cells},
        }
        return record, all_cached

    @staticmethod
    def _reverify(serialized: Dict[str, Any], G: GroupHandle) -> FolnerCertificate:
        cert = FolnerCertificate.from_dict(serialized, G)
        if not cert.verify(G):
            raise RuntimeError(f"Certificate for {G.spec} does not verify from its serialized form")
        return cert

    def profile(
        self,
        family: str,
        mode: Mode,
        samplers: Sequence[str] = SAMPLERS,
        exclude_identity: Optional[bool] = None,
    ) -> Tuple[Dict[str, Any], bool]:
        groups = parse_family_spec(family)
        low, high = self.config.n_range
        exclude = exclude_identity if exclude_identity is not None else self.config.exclude_identity
        inputs = {
            "family": [G.spec for G in groups],
            "mode": mode.value,
            "samplers": list(samplers),
            "exclude_identity": exclude,
        }
        stem = f"profile_{mode.value}_{record_key('profile', inputs, self.config.config_hash())[:10]}"

        def compute():
            profile = profile_uniform(
                groups, mode, range(low, high + 1),
                samplers=samplers,
                seed=self.config.seed,
                samples_per_n=self.config.samples_per_n,
                budget=self.config.subset_budget,
                exclude_identity=exclude,
                tower=self.tower if "lifted" in samplers else None,
            )
            csv_path, json_path = self.exporter.write_profile(stem, profile, self.config.to_dict())
            logger.info(self.exporter.generate_summary(profile))
            return {
                "mode": mode.value,
                "rows": len(profile.rows),
                "f_hat": profile.f_hat(),
                "witness_contains_identity": profile.witnesses_contain_identity(),
                "csv": str(csv_path),
                "json": str(json_path),
            }

        return self.run("profile", inputs, compute)

    def freewords(self, max_len: Optional[int] = None, generators: str = "hyperbolic") -> Tuple[Dict[str, Any], bool]:
        length = max_len if max_len is not None else self.config.max_word_length
        inputs = {"max_len": length, "generators": generators}

        def compute():
            a, b = generator_pair(generators)
            return free_words_check(a, b, length).to_dict()

        return self.run("freewords", inputs, compute)

    # -- folog --------------------------------------------------------------

    def fo(self, group: str, sentences: Sequence[Tuple[int, Formula]]) -> Tuple[Dict[str, Any], bool]:
        """Evaluate numbered sentences over each group of a family."""
        groups = parse_family_spec(group)
        for number, f in sentences:
            if not is_sentence(f):
                raise InputError(f"Sentence on line {number} has free variables")
        inputs = {"groups": [G.spec for G in groups], "sentences": [print_formula(f) for _, f in sentences]}

        def compute():
            results = []
            for G in groups:
                for number, f in sentences:
                    result = evaluate(G, f, budget=self.config.eval_budget)
                    entry = result.to_dict(print_formula(f), G.spec)
                    entry["line"] = number
                    results.append(entry)
            return {"results": results}

        return self.run("fo", inputs, compute)
