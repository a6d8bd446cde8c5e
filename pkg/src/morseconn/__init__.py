"""Discrete Morse theory on simplicial complexes: gradient fields, Morse
complexes, connectedness homomorphisms, birth/death transitions and the
complex of discrete Morse functions."""

from .birth_death import (analyze_transition, cancel_pair, detect_transition, verify_composition,
                          verify_transition_chain_maps, verify_transition_sequence)
from .connectedness import (ConnHom, build_conn_hom, check_function_connectedness, is_chain_map,
                            is_faithful, is_partially_connected, is_strongly_connected, is_weakly_faithful)
from .io import ParseError, load_complex, load_field, parse_complex, parse_field
from .mfc import build_mfc, classify_face_step, enumerate_primitive_fields
from .morse import (FieldError, GradientField, build_morse_complex, connectedness_coefficient,
                    enumerate_paths, gradient_field_of, is_optimal, morse_homology, simplicial_homology)
from .simplicial import ComplexError, OrientedComplex, build_complex

__version__ = "0.1.0"
