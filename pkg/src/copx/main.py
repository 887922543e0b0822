import importlib.metadata
import logging
import sys

from docstring_parser import DocstringStyle
from jsonargparse import CLI, set_docstring_parse_options

from copx import _logger as logger
from copx.exceptions import CopxError, exit_code_for
from copx.utils.cli.config import Config
from copx.utils.cli.modes import (
    CertifyMode,
    FacetsMode,
    GenMode,
    OracleMode,
    VerifyMode,
    write_error,
)


class Main(GenMode, CertifyMode, FacetsMode, VerifyMode, OracleMode):
    """copx CLI to enumerate 0/1 instances, certify vertex optimality by cone
    membership, synthesize sign-vector facet descriptions, and falsification-test the
    underlying claims against an exact convex hull oracle. Exit codes: 0 ok, 2 usage,
    3 refuted or cross-check mismatch, 4 size cap or unbounded region, 5
    literal-vs-irreducible divergence."""


def _setup_logger():
    logger.setLevel(logging.INFO)
    streamhandler = logging.StreamHandler()
    streamhandler.setLevel(logging.INFO)
    formatter = logging.Formatter(
        fmt="[%(asctime)s] (%(levelname)s): %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    streamhandler.setFormatter(formatter)
    logger.addHandler(streamhandler)


def main():
    set_docstring_parse_options(style=DocstringStyle.GOOGLE, attribute_docstrings=True)
    _setup_logger()
    try:
        code = CLI(
            Main,
            as_positional=False,
            version=importlib.metadata.version("copx"),
        )
    except (CopxError, ValueError) as e:
        # raised while building argument groups, before any mode could handle it
        code = exit_code_for(e)
        logger.error(str(e))
        write_error(Config().results_dir, e, code)
    sys.exit(int(code or 0))


if __name__ == "__main__":
    main()
