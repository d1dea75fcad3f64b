"""
Flat key = value experiment configuration files
"""
import configparser
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from ..utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

SECTION = "experiment"
DEFAULTS_FILE = Path(__file__).resolve().parents[2] / "config.ini"


def _needs_section(text: str) -> bool:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith(("#", ";")):
            continue
        return not stripped.startswith("[")
    return True


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Key/value pairs of the [experiment] section; a file without section headers is one section"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}") from e
    if _needs_section(text):
        text = f"[{SECTION}]\n{text}"

    parser = configparser.ConfigParser(comment_prefixes=("#", ";"), inline_comment_prefixes=("#",),
                                       interpolation=None)
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as e:
        raise ConfigurationError(f"malformed config file {path}: {e}") from e

    if not parser.has_section(SECTION):
        raise ConfigurationError(f"config file {path} has no [{SECTION}] section")
    values = {key: value for key, value in parser.items(SECTION) if value != ""}
    logger.debug("read %d key(s) from %s", len(values), path)
    return values


def load_config_values(config_file: Optional[Union[str, Path]] = None,
                       defaults_file: Optional[Union[str, Path]] = DEFAULTS_FILE) -> Dict[str, str]:
    """Layer the defaults file under an optional experiment file"""
    values: Dict[str, str] = {}
    if defaults_file is not None and Path(defaults_file).is_file():
        values.update(read_config_file(defaults_file))
    if config_file is not None:
        values.update(read_config_file(config_file))
    return values
