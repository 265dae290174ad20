"""
Embedded templates for FolnerLab: the default run configuration,
overridable from input/templates/.
"""

from .embedded import get_template, TEMPLATES, DEFAULT_CONFIG_TEMPLATE

__all__ = ['get_template', 'TEMPLATES', 'DEFAULT_CONFIG_TEMPLATE']
