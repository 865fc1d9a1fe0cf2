"""
Utility functions for the expansion toolkit
"""

import json
import logging
from typing import Dict, Any, Optional
from pathlib import Path
from datetime import datetime


DEFAULT_LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(log_config: Optional[Dict[str, Any]] = None, verbose: bool = False):
    """
    Configure the root logger from the logging section of config.yaml

    Only the first call installs handlers; later calls just lower the level
    when verbose is set.

    Args:
        log_config: Logging section (level, format, log_file)
        verbose: Force DEBUG level
    """
    log_config = log_config or {}
    level = logging.DEBUG if verbose else getattr(logging, str(log_config.get('level', 'INFO')).upper())

    root = logging.getLogger()
    if root.hasHandlers():
        if verbose:
            root.setLevel(level)
        return

    handlers = [logging.StreamHandler()]
    log_file = log_config.get('log_file')
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_file))

    logging.basicConfig(
        level=level,
        format=log_config.get('format', DEFAULT_LOG_FORMAT),
        handlers=handlers
    )


def save_json_file(data: Dict[str, Any], file_path: str, indent: int = 2):
    """
    Save data to JSON file

    Args:
        data: Data to save
        file_path: Path to save to
        indent: JSON indentation
    """
    Path(file_path).parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=indent, ensure_ascii=False)
        f.write('\n')


def dumps_canonical(data: Any, indent: int = 2) -> str:
    """JSON text with sorted keys, so equal data gives identical bytes"""
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False)


def get_output_filename(prefix: str, extension: str = 'json', stamp: bool = False) -> str:
    """
    Generate output filename

    Args:
        prefix: Filename prefix (suite name, trial seed, ...)
        extension: File extension
        stamp: Append the current time

    Returns:
        Filename string
    """
    safe = "".join(c if c.isalnum() or c in '-_' else '_' for c in prefix)
    if stamp:
        safe += '_' + datetime.now().strftime('%Y%m%d_%H%M%S')
    return f"{safe}.{extension}"
