"""
Embedded templates for FolnerLab.

The default run configuration is embedded as a Python constant; a file of
the same name in the override directory takes precedence.
"""

from pathlib import Path
from typing import Optional

DEFAULT_CONFIG_TEMPLATE = """# FolnerLab run configuration (flat key = value; '#' starts a comment)

# Groups: comma separated specs or ranges (sl2:gf2_1..3, sym:2..5, cyclic:6, prod(A,B))
GROUPS = sym:2..5
TOWER_LEVELS = 1,2,4

# Budgets
ENUM_BUDGET = 1000000
SUBSET_BUDGET = 2000000
FORMULA_BUDGET = 1000000
EVAL_BUDGET = 100000000

# Exact rationals only, written p/q
EPSILONS = 1/1, 1/2, 1/3

SEED = 0
# OUT_DIR = ./output    # defaults to $FOLNERLAB_OUT_DIR, then ./output
# auto: on for conjugation, off for translation
EXCLUDE_IDENTITY = auto

# Profiles
N_RANGE = 1..4
SAMPLES_PER_N = 2

# Free words
MAX_WORD_LENGTH = 8
"""

TEMPLATES = {
    "folnerlab.ini": DEFAULT_CONFIG_TEMPLATE,
}


def get_template(name: str, override_dir: Optional[Path] = None) -> str:
    """
    Get template content with optional file override capability.

    Args:
        name: Template name ('folnerlab.ini')
        override_dir: Directory checked for an override file first
            (defaults to input/templates/)

    Returns:
        Template content as string

    Raises:
        KeyError: If the name is neither embedded nor overridden
    """
    if override_dir is None:
        override_dir = Path("input/templates")

    override_path = Path(override_dir) / name
    if override_path.exists():
        return override_path.read_text(encoding="utf-8")

    if name in TEMPLATES:
        return TEMPLATES[name]

    raise KeyError(f"Template '{name}' not found in embedded templates or override directory")
