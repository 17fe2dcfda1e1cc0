from .classes import (
    KClass,
    ModuleDescriptor,
    class_of_module,
    direct_sum,
    direct_sum_modules,
    embed_class,
    gl2_action,
    gl_action,
)
from .exterior import ExtElement, wedge
from .pushforward import (
    LevelEntry,
    LevelReport,
    WaveletClass,
    dilate_class,
    level_report,
    pmra_level_class,
    wavelet_class,
)

__all__ = [
    "ExtElement",
    "KClass",
    "LevelEntry",
    "LevelReport",
    "ModuleDescriptor",
    "WaveletClass",
    "class_of_module",
    "dilate_class",
    "direct_sum",
    "direct_sum_modules",
    "embed_class",
    "gl2_action",
    "gl_action",
    "level_report",
    "pmra_level_class",
    "wavelet_class",
    "wedge",
]
