from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from gamma2kit.catalog import catalog, catalog_alt, rank_certificate
from gamma2kit.config import Settings, load_settings
from gamma2kit.errors import DecompositionError, Gamma2Error, GenusError, WordSyntaxError
from gamma2kit.gl2 import (
    decompose_gl2,
    format_stu,
    level2_decompose,
    level2_member,
    n3_equal,
    random_gl2,
    stu_eval,
    stu_to_mcg,
)
from gamma2kit.homology import validate_genus
from gamma2kit.linalg import IntMatrix, equal, to_decimal_rows
from gamma2kit.models import OutputFormat, VerifyReport, Word
from gamma2kit.parser import looks_like_matrix, parse_matrix, parse_word
from gamma2kit.representation import HomAction, eta, evaluate, f_eta, f_map, is_level2, project_action, rho
from gamma2kit.service import VerificationService
from gamma2kit.words import format_word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    genus: int
    command: str
    result: dict[str, Any]
    checks: list[VerifyReport] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if all(check.passed for check in self.checks) else EXIT_FAILED

    def to_dict(self) -> dict[str, Any]:
        return {
            "genus": self.genus,
            "command": self.command,
            "result": self.result,
            "checks": [check.to_dict() for check in self.checks],
        }


def _flatten(path: str, value: Any) -> Iterator[tuple[str, str]]:
    if isinstance(value, dict):
        for key, item in value.items():
            yield from _flatten(f"{path}.{key}" if path else str(key), item)
    elif isinstance(value, list) and value and all(isinstance(row, list) for row in value):
        yield path, ";".join(" ".join(str(entry) for entry in row) for row in value)
    elif isinstance(value, list) and any(isinstance(item, dict) for item in value):
        for index, item in enumerate(value):
            yield from _flatten(f"{path}.{index}", item)
    elif isinstance(value, list):
        yield path, " ".join(_scalar(item) for item in value)
    else:
        yield path, _scalar(value)


def _scalar(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def format_json(result: CommandResult) -> str:
    return json.dumps(result.to_dict(), indent=2)


def format_csv(result: CommandResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "key", "value", "params"])
    writer.writerow(["meta", "genus", result.genus, ""])
    writer.writerow(["meta", "command", result.command, ""])
    for key, value in _flatten("", result.result):
        writer.writerow(["result", key, value, ""])
    for check in result.checks:
        data = check.to_dict()
        writer.writerow(["check", check.name, data["status"], json.dumps(data["params"])])
    return buffer.getvalue().rstrip("\n")


def format_plain(result: CommandResult) -> str:
    lines = [f"genus: {result.genus}", f"command: {result.command}"]
    lines += [f"{key}: {value}" for key, value in _flatten("", result.result)]
    for check in result.checks:
        params = " ".join(_scalar(p) for p in check.to_dict()["params"])
        lines.append(f"[{check.status.value}] {check.name} {params}".rstrip())
    return "\n".join(lines)


RENDERERS = {
    OutputFormat.JSON: format_json,
    OutputFormat.CSV: format_csv,
    OutputFormat.PLAIN: format_plain,
}


def _report(name: str, params: tuple[Any, ...], holds: bool, witness: Optional[dict[str, Any]] = None) -> VerifyReport:
    return VerifyReport(name, params, observed=holds, witness=witness)


def _invariant_checks(action: HomAction, label: str) -> list[VerifyReport]:
    det = action.determinant()
    return [
        _report("determinant-unit", (label,), det in (1, -1), {"determinant": str(det)}),
        _report("torsion-fixed", (label,), action.fixes_torsion(), {"h1": action.to_rows()}),
        _report(
            "mod2-form-preserved", (label,), action.preserves_mod2_form(), {"mod2": to_decimal_rows(action.mod2())}
        ),
    ]


class Gamma2Cli:
    def __init__(self, settings: Settings) -> None:
        self.settings = settings

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="gamma2kit",
            description="Level 2 mapping class groups of nonorientable surfaces: exact homology computations.",
        )
        parser.add_argument("--genus", type=int, required=True, help="number of crosscaps g")
        parser.add_argument(
            "--format",
            choices=[fmt.value for fmt in OutputFormat],
            default=self.settings.output_format.value,
        )
        parser.add_argument("--seed", type=int, default=self.settings.seed)
        commands = parser.add_subparsers(dest="command", required=True)

        eval_parser = commands.add_parser("eval", help="H_1 action, R_g image and mod-2 image of a word")
        eval_parser.add_argument("word", nargs="?", default="")

        level2_parser = commands.add_parser("level2", help="level-2 membership of a word or an R_g matrix")
        level2_parser.add_argument("input", nargs="*")

        decompose_parser = commands.add_parser("decompose", help="genus-3 words for a GL(2, Z) matrix or a word")
        decompose_parser.add_argument("input", nargs="*")
        decompose_parser.add_argument("--random", action="store_true", help="decompose a seeded random matrix")

        catalog_parser = commands.add_parser("catalog", help="level-2 generators with their images")
        catalog_parser.add_argument("--alt", action="store_true", help="squared twists instead of type-(2) slides")

        commands.add_parser("rank", help="GF(2) rank certificate of the generator images")
        commands.add_parser("verify", help="run the identity suite")
        return parser

    def run(self, argv: Optional[list[str]] = None) -> int:
        args = self.build_parser().parse_args(argv)
        handler = getattr(self, f"cmd_{args.command}")
        try:
            validate_genus(args.genus)
            result = handler(args)
        except Gamma2Error as exc:
            print(f"error: {exc}", file=sys.stderr)
            if isinstance(exc, WordSyntaxError) and exc.text is not None:
                print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
            return EXIT_USAGE
        except DecompositionError:
            logger.exception("Decomposition failed", extra={"command": args.command, "genus": args.genus})
            return EXIT_FAILED
        print(RENDERERS[OutputFormat(args.format)](result))
        return result.exit_code

    def cmd_eval(self, args: argparse.Namespace) -> CommandResult:
        word = parse_word(args.word, args.genus)
        action = evaluate(word)
        label = format_word(word)
        result = {
            "word": label,
            "h1": action.to_rows(),
            "rho": to_decimal_rows(project_action(action)),
            "mod2": to_decimal_rows(action.mod2()),
        }
        return CommandResult(args.genus, "eval", result, _invariant_checks(action, label))

    def cmd_level2(self, args: argparse.Namespace) -> CommandResult:
        text = " ".join(args.input)
        if looks_like_matrix(text):
            matrix = parse_matrix(text, args.genus - 1)
            member = level2_member(matrix)
            result: dict[str, Any] = {
                "input": "matrix",
                "matrix": to_decimal_rows(matrix),
                "level2": member,
                "f": to_decimal_rows(f_map(matrix)) if member else None,
            }
        else:
            word = parse_word(text, args.genus)
            result = {"input": "word", "word": format_word(word), "level2": is_level2(word)}
        return CommandResult(args.genus, "level2", result)

    def cmd_decompose(self, args: argparse.Namespace) -> CommandResult:
        if args.genus != 3:
            raise GenusError(f"decompose works in genus 3 only, got genus {args.genus}")
        text = " ".join(args.input)
        word: Optional[Word] = None
        if args.random:
            matrix = random_gl2(random.Random(args.seed))
            source = "random"
        elif looks_like_matrix(text):
            matrix = parse_matrix(text, 2)
            source = "matrix"
        else:
            word = parse_word(text, 3)
            matrix = rho(word)
            source = "word"
        return self._decomposition(matrix, source, word)

    def _decomposition(self, matrix: IntMatrix, source: str, word: Optional[Word]) -> CommandResult:
        stu = decompose_gl2(matrix)
        mcg = stu_to_mcg(stu)
        stu_ok = equal(stu_eval(stu), matrix)
        mcg_ok = equal(rho(mcg), matrix)
        checks = [_report("stu-roundtrip", (source,), stu_ok), _report("mcg-roundtrip", (source,), mcg_ok)]
        result: dict[str, Any] = {
            "input": source,
            "matrix": to_decimal_rows(matrix),
            "stu": format_stu(stu) if stu_ok else None,
            "mcg": format_word(mcg) if mcg_ok else None,
        }
        if word is not None:
            result["word"] = format_word(word)
            checks.append(_report("mcg-equal", (source,), n3_equal(word, mcg)))
        if level2_member(matrix):
            generators = level2_decompose(matrix, self.settings.search_depth)
            level2_ok = equal(eta(generators), matrix)
            checks.append(_report("level2-roundtrip", (source,), level2_ok))
            result["level2"] = format_word(generators) if level2_ok else None
        else:
            result["level2"] = None
        return CommandResult(3, "decompose", result, checks)

    def cmd_catalog(self, args: argparse.Namespace) -> CommandResult:
        generators = catalog_alt(args.genus) if args.alt else catalog(args.genus)
        elements = []
        checks = []
        for word in generators.elements():
            label = format_word(word)
            elements.append({"label": label, "eta": to_decimal_rows(eta(word)), "f_eta": to_decimal_rows(f_eta(word))})
            checks.append(_report("catalog-level2", (label,), is_level2(word)))
        result = {
            "size": generators.size,
            "type1": len(generators.type1),
            "type2": len(generators.type2),
            "alternative": generators.alternative,
            "elements": elements,
        }
        return CommandResult(args.genus, "catalog", result, checks)

    def cmd_rank(self, args: argparse.Namespace) -> CommandResult:
        cert = rank_certificate(args.genus)
        labels = catalog(args.genus).labels()
        result = {
            "rank": cert.rank,
            "target": cert.target,
            "witness": list(cert.witness),
            "witness_labels": [labels[i] for i in cert.witness],
            "catalog_size": cert.catalog_size,
            "type1_rank": cert.type1_rank,
            "type2_in_type1_span": list(cert.type2_in_type1_span),
        }
        checks = [_report("rank-certificate", (args.genus,), cert.rank == cert.target)]
        return CommandResult(args.genus, "rank", result, checks)

    def cmd_verify(self, args: argparse.Namespace) -> CommandResult:
        service = VerificationService(args.genus, args.seed, self.settings)
        reports = service.run()
        result = {
            "header": service.header(),
            "total": len(reports),
            "failures": sum(1 for report in reports if not report.passed),
        }
        return CommandResult(args.genus, "verify", result, reports)


def main(argv: Optional[list[str]] = None) -> int:
    settings = load_settings()
    logging.basicConfig(level=getattr(logging, settings.log_level, logging.WARNING), stream=sys.stderr)
    return Gamma2Cli(settings).run(argv)


if __name__ == "__main__":
    sys.exit(main())
