import argparse
from pathlib import Path

from project.services.matching.shape_code import ShapePriority
from project.services.ranking import Ordering
from project.settings import LogLevel, Settings


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number


def _common_options(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        type=LogLevel,
        choices=list(LogLevel),
        default=settings.log_level,
        help="logging threshold on stderr",
    )
    common.add_argument("--json", action="store_true", help="print JSON instead of TSV")
    common.add_argument("--jobs", type=_positive, default=settings.jobs)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--sector-width", type=_positive, default=settings.sector_width)
    common.add_argument(
        "--noise-floor", type=_positive, default=settings.shape_noise_floor,
    )
    common.add_argument(
        "--priority",
        type=ShapePriority,
        choices=list(ShapePriority),
        default=settings.shape_priority,
        help="code of a sector with both ascender and descender ink",
    )
    common.add_argument(
        "--min-speck",
        type=_non_negative,
        default=settings.min_speck,
        help="drop ink components smaller than this many pixels before segmenting",
    )
    return common


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    """
    Command line of the toolkit.

    Defaults come from ``settings`` so environment variables apply to every
    subcommand.
    """
    common = _common_options(settings)
    parser = argparse.ArgumentParser(
        prog="wordspot",
        description="Line and word segmentation and word spotting for printed pages.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    segment = commands.add_parser(
        "segment", parents=[common], help="segment pages into lines and words",
    )
    segment.add_argument("pages", nargs="+", type=Path)
    segment.add_argument(
        "--dump-profile", action="store_true", help="include projection profiles",
    )

    index = commands.add_parser("index", parents=[common], help="build a word index")
    index.add_argument("pages", nargs="*", type=Path)
    index.add_argument("-o", "--output", type=Path, required=True)

    match = commands.add_parser("match", parents=[common], help="rank words against a query")
    match.add_argument("index", type=Path)
    query = match.add_mutually_exclusive_group(required=True)
    query.add_argument("--word", help="query word id PAGE/LINE/POSITION")
    query.add_argument("--image", type=Path, help="external word image")
    match.add_argument("--top", type=_non_negative, default=settings.top_k)
    match.add_argument(
        "--ordering",
        type=Ordering,
        choices=list(Ordering),
        default=settings.ordering,
    )
    match.add_argument(
        "--tolerance",
        type=_non_negative,
        default=None,
        help=f"width tolerance in pixels (default {settings.tolerance}, scaled by --dpi)",
    )
    match.add_argument("--dpi", type=_positive, default=settings.dpi)
    match.add_argument(
        "--labels",
        nargs="+",
        type=Path,
        default=None,
        help="ground-truth files of the indexed pages, in page order",
    )

    synth = commands.add_parser(
        "synth", parents=[common], help="render a synthetic page with ground truth",
    )
    synth.add_argument("spec", type=Path)
    synth.add_argument("output", type=Path)

    serve = commands.add_parser("serve", parents=[common], help="run the HTTP service")
    serve.add_argument("--host", default=settings.host)
    serve.add_argument("--port", type=int, default=settings.port)
    serve.add_argument("--index", type=Path, default=settings.index_path)
    return parser
