"""Command-line front end.

Subcommands: barcode, match, sum, catalog, random.  Reports are JSON
with sorted keys (byte-deterministic given the same file and flags) or
an ASCII bar rendering.  Exit codes: 0 ok, 2 parse error, 3 validation
error, 4 usage error, 5 incompatible inputs.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import gf, serial
from .bauer_lesnick import chi
from .ladders import CATALOG_CODES, from_code, random_ladder
from .matching import g_matching, m_matching
from .modules import (
    Barcode,
    GridInterval,
    Morphism,
    ValidationError,
    barcode,
    direct_sum_morphism,
    image_module,
    shift_morphism,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATE = 3
EXIT_USAGE = 4
EXIT_INCOMPATIBLE = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indumatch", description=__doc__)
    parser.add_argument("--prime", type=int, default=2,
                        help="field characteristic for generated data")
    parser.add_argument("--format", choices=["json", "ascii"], default="json",
                        help="report format")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bar = sub.add_parser("barcode", help="barcodes of source, target and image")
    p_bar.add_argument("file")

    p_match = sub.add_parser("match", help="matching induced by the morphism")
    p_match.add_argument("file")
    p_match.add_argument("--method", default="m",
                         help="m (counts), g (bar-valued) or chi (greedy)")
    p_match.add_argument("--eps", type=int, default=0,
                         help="apply the shift functor before matching")

    p_sum = sub.add_parser("sum", help="direct sum of ladder files")
    p_sum.add_argument("files", nargs="+")

    p_cat = sub.add_parser("catalog", help="the 29 indecomposable ladders on {1,2,3}")
    p_cat.add_argument("--dump", metavar="DIR",
                       help="write one file per catalog entry into DIR")

    p_rand = sub.add_parser("random", help="generate a random ladder file")
    p_rand.add_argument("--n", type=int, default=6)
    p_rand.add_argument("--max-dim", type=int, default=4)
    p_rand.add_argument("--seed", type=int, default=None,
                        help="defaults to INDUMATCH_SEED or 0")
    return parser


def _load(path: str) -> Morphism:
    f = serial.read_morphism(path)
    f.validate()
    return f


def _interval_json(iv) -> list[int]:
    return [iv.a, iv.b]


def _barcode_json(bc: Barcode) -> list[dict]:
    return [
        {"interval": _interval_json(iv), "multiplicity": m}
        for iv, m in bc.items()
    ]


def _emit(payload: dict) -> int:
    sys.stdout.write(serial.dumps_canonical(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# ASCII rendering: one character column per grid position, a full block
# over the support of each indexed bar.


def _bar_row(iv, n: int) -> str:
    return "".join("█" if iv.contains(t) else "·" for t in range(1, n + 1))


def _bar_label(iv, idx: int) -> str:
    return f"[{iv.a},{iv.b}]_{idx}"


def _render_barcode_panel(title: str, bc: Barcode, n: int) -> list[str]:
    lines = [f"{title}:"]
    for iv, idx in bc.rep():
        lines.append(f"  {_bar_label(iv, idx):<10} {_bar_row(iv, n)}")
    if not bc.rep():
        lines.append("  (empty)")
    return lines


def cmd_barcode(f: Morphism, fmt: str) -> int:
    image, _ = image_module(f)
    b_src, b_dst, b_img = barcode(f.source), barcode(f.target), barcode(image)
    if fmt == "ascii":
        lines = (
            _render_barcode_panel("source", b_src, f.n)
            + _render_barcode_panel("target", b_dst, f.n)
            + _render_barcode_panel("image", b_img, f.n)
        )
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    return _emit(
        {
            "barcode_source": _barcode_json(b_src),
            "barcode_target": _barcode_json(b_dst),
            "barcode_image": _barcode_json(b_img),
        }
    )


def _match_payload(f: Morphism, method: str, eps: int) -> dict:
    if method == "m":
        table = m_matching(f)
        entries = [
            {"I": _interval_json(i), "J": _interval_json(j), "count": c}
            for (i, j), c in table.items()
        ]
        return {"method": "m", "eps": eps, "entries": entries}
    if method == "g":
        table = g_matching(f)
        entries = [
            {"I": _interval_json(i), "J": _interval_json(j),
             "bars": _barcode_json(bc)}
            for (i, j), bc in table.items()
        ]
        return {"method": "g", "eps": eps, "entries": entries}
    sigma = chi(f)
    pairs = [
        {"source": {"interval": _interval_json(i), "index": l},
         "target": {"interval": _interval_json(j), "index": m}}
        for (i, l), (j, m) in sigma.items()
    ]
    unmatched = [
        {"interval": _interval_json(iv), "index": l}
        for iv, l in barcode(f.source).rep()
        if (iv, l) not in sigma.domain()
    ]
    return {"method": "chi", "eps": eps, "pairs": pairs,
            "unmatched_source": unmatched}


def _render_match_ascii(f: Morphism, payload: dict) -> str:
    n = f.n
    lines = []
    if payload["method"] in ("m", "g"):
        for e in payload["entries"]:
            ia, ib = e["I"]
            ja, jb = e["J"]
            left = _bar_row(GridInterval(ia, ib), n)
            right = _bar_row(GridInterval(ja, jb), n)
            detail = (
                f"x{e['count']}" if payload["method"] == "m"
                else " ".join(
                    f"[{s},{r}]x{bar['multiplicity']}"
                    for bar in e["bars"]
                    for s, r in [bar["interval"]]
                )
            )
            lines.append(
                f"[{ia},{ib}] {left} → {right} [{ja},{jb}]  {detail}"
            )
        if not payload["entries"]:
            lines.append("(empty matching)")
    else:
        for pair in payload["pairs"]:
            (ia, ib), l = pair["source"]["interval"], pair["source"]["index"]
            (ja, jb), m = pair["target"]["interval"], pair["target"]["index"]
            lines.append(
                f"[{ia},{ib}]_{l} {_bar_row(GridInterval(ia, ib), n)} → "
                f"{_bar_row(GridInterval(ja, jb), n)} [{ja},{jb}]_{m}"
            )
        for bar in payload["unmatched_source"]:
            (ia, ib), l = bar["interval"], bar["index"]
            lines.append(
                f"[{ia},{ib}]_{l} {_bar_row(GridInterval(ia, ib), n)} → ×"
            )
    return "\n".join(lines) + "\n"


def cmd_match(f: Morphism, method: str, eps: int, fmt: str) -> int:
    if method not in ("m", "g", "chi"):
        raise UsageError(f"unknown method {method!r} (expected m, g or chi)")
    if eps:
        if not 0 <= eps <= f.n - 1:
            raise UsageError(f"--eps must be in 0..{f.n - 1}")
        f = shift_morphism(f, eps)
    payload = _match_payload(f, method, eps)
    if fmt == "ascii":
        sys.stdout.write(_render_match_ascii(f, payload))
        return EXIT_OK
    return _emit(payload)


def cmd_sum(paths: list[str]) -> int:
    morphisms = [_load(p) for p in paths]
    first = morphisms[0]
    for f in morphisms[1:]:
        if f.n != first.n or f.p != first.p:
            sys.stderr.write(
                f"error: incompatible inputs (n={f.n}, p={f.p}) vs "
                f"(n={first.n}, p={first.p})\n"
            )
            return EXIT_INCOMPATIBLE
    total = morphisms[0]
    for f in morphisms[1:]:
        total = direct_sum_morphism(total, f)
    sys.stdout.write(serial.dumps_canonical(serial.morphism_to_dict(total)))
    return EXIT_OK


def _code_slug(code) -> str:
    return "".join(str(x) for x in code.upper) + "_" + "".join(
        str(x) for x in code.lower
    )


def cmd_catalog(dump: str | None, p: int) -> int:
    if dump is None:
        return _emit(
            {"codes": [{"upper": list(c.upper), "lower": list(c.lower)}
                       for c in CATALOG_CODES]}
        )
    out = Path(dump)
    out.mkdir(parents=True, exist_ok=True)
    for code in CATALOG_CODES:
        serial.write_morphism(from_code(code, p), out / f"{_code_slug(code)}.json")
    sys.stderr.write(f"wrote {len(CATALOG_CODES)} files to {out}\n")
    return EXIT_OK


def cmd_random(n: int, max_dim: int, seed: int | None, p: int) -> int:
    if seed is None:
        seed = int(os.environ.get("INDUMATCH_SEED", "0"))
    f = random_ladder(n, max_dim, p, seed)
    sys.stdout.write(serial.dumps_canonical(serial.morphism_to_dict(f)))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "barcode":
            return cmd_barcode(_load(args.file), args.format)
        if args.command == "match":
            return cmd_match(_load(args.file), args.method, args.eps, args.format)
        if args.command == "sum":
            return cmd_sum(args.files)
        if args.command in ("catalog", "random") and not gf.is_prime(args.prime):
            raise UsageError(f"--prime must be prime, got {args.prime}")
        if args.command == "catalog":
            return cmd_catalog(args.dump, args.prime)
        if args.command == "random":
            return cmd_random(args.n, args.max_dim, args.seed, args.prime)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except serial.ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except FileNotFoundError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        return EXIT_VALIDATE


if __name__ == "__main__":
    sys.exit(main())
