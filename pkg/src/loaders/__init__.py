from .text import read_text
from .phantom_file import dump_phantom, load_phantom, parse_phantom
from .ksp import parse_ksp, read_ksp
