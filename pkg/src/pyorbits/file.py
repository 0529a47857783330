import logging
from pathlib import Path

import chardet

from .poly.error import PolynomialFileError

logger = logging.getLogger(__name__)

COMMENT_MARK = "#"


def read_text(file: Path) -> str:
    """Read a text file, detecting the encoding when it is not UTF-8.

    Raises:
        PolynomialFileError: if the file cannot be read or decoded.
    """
    logger.debug(f"Reading file <{file}>")

    try:
        raw = file.read_bytes()
    except OSError as e:
        raise PolynomialFileError(file, e.strerror or str(e)) from e

    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        pass

    detected = chardet.detect(raw)
    encoding = detected["encoding"]
    logger.debug(f"File {file} is not UTF-8, detected {encoding} ({detected['confidence']:.2f})")

    if encoding is None:
        raise PolynomialFileError(file, "unknown text encoding")

    try:
        return raw.decode(encoding)
    except (UnicodeDecodeError, LookupError) as e:
        raise PolynomialFileError(file, f"cannot decode as {encoding}") from e


def read_polynomial_text(file: Path) -> str:
    """Polynomial text stored in a file.

    Everything after ``#`` on a line is ignored; the remaining lines are
    joined, so a long polynomial may span several lines.

    Raises:
        PolynomialFileError: if the file is unreadable or holds no polynomial.
    """
    lines = (line.split(COMMENT_MARK, 1)[0].strip() for line in read_text(file).splitlines())
    text = " ".join(line for line in lines if line)

    if not text:
        raise PolynomialFileError(file, "no polynomial found")

    return text
