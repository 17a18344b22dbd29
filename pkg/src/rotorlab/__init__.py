"""rotorlab: exact link invariants and rotor/rotant experiments."""
from .diagram import (Crossing, Diagram, DiagramError, ParseError, ValidationError, build_diagram,
                      checkerboard, components, diagram_from_json, faces, mirror, parse_diagram,
                      reverse, serialize, writhe)
from .exactmat import (AbelianGroup, GaussMatrix, GaussRational, IntMatrix, LaurentPoly, char_poly,
                       hermitian_signature, poly_det, smith_normal_form, unit_circle_point)
from .invariants import (alexander_polynomial, conway_from_seifert, conway_skein, determinant,
                         double_cover_h1, goeritz, hermitian_form_matrix, invariant_report,
                         linking_data, murasugi_signature, seifert_matrix, tl_signature)
from .tangle import (Orientation, RotorLink, Tangle, classify_orientation, compose, dihedral_flype,
                     is_rotor_symmetric, random_rotor, random_rotor_link, random_stator, rotant,
                     rotate, rotor_link_from_json)
from .harness import (RotantReport, check_arc_crossing_sums, compare_rotants, property_suite,
                      search_conway_counterexample, search_homology_example)

__version__ = "0.1.0"
