from __future__ import absolute_import

__title__ = "torus-pmra"
from torus_pmra.__version__ import __version__  # noqa

__license__ = "MIT"

from torus_pmra.config import ConfigManager, RunConfig, resolve_config
from torus_pmra.frames import FrameSet, generate_frame
from torus_pmra.ktheory import KClass, ModuleDescriptor, class_of_module, dilate_class
from torus_pmra.lattice import CosetTable, DilationSpec, coset_table, validate_dilation
from torus_pmra.serializers import JsonSerializer, SerializerRegistry

__all__ = [
    "ConfigManager",
    "RunConfig",
    "resolve_config",
    "DilationSpec",
    "validate_dilation",
    "CosetTable",
    "coset_table",
    "KClass",
    "ModuleDescriptor",
    "class_of_module",
    "dilate_class",
    "FrameSet",
    "generate_frame",
    "JsonSerializer",
    "SerializerRegistry",
]
