"""curvefill: constructive plane-filling curves with grid-certified checks."""

from .kernel import (AffineImage, Concat, Constant, ContinuityError, Curve,
                     CurveError, DomainError, HilbertApprox, PointwiseProduct,
                     PolyApply, Polygonal, Polynomial, PreconditionError, Rect,
                     Restrict, ScalarMultiple, StructureError, Sum,
                     SYM_SQUARE, UNIT_SQUARE, add, concat, d_inf, monomial,
                     multiply, poly_apply, power, restrict, sample_plan, scale,
                     sup_norm, uniform_distance)
from .generators import (FillerGuarantee, filler_with_endpoints, hilbert,
                         hilbert_guarantee, polygonal, polygonal_approximation,
                         segment, approximation_error_bound,
                         certified_distance_below)
from .constructions import (Breakpoints, DEFAULT_ORDER, PorosityWitness,
                            RationalSeq, algebrable_generator,
                            algebrable_window, constant_plateau,
                            cumulative_generator, find_rational_seq,
                            locally_constant_perturbation,
                            nonequicontinuity_witness, partition_index,
                            partition_index_inverse, porosity_witness,
                            rational_seq, rational_value,
                            semigroup_generator, semigroup_product,
                            sf_dense_approximation, spaceable_basis,
                            spaceable_combination, tsf1_generator, tsf1_window)
from .verification import (ClassifyReport, ContentReport, CoverageGrid,
                           DecayCheck, INCONCLUSIVE, SF_CERTIFIED, TAU_NORM,
                           TAU_SF, THIN, TSF_EVIDENCE, certify_delta_dense,
                           classify, coefficient_decay_check, content_bounds,
                           downsample, image_bounds, nikolskii_ratio,
                           rasterize, write_pgm)
from .polyparse import parse_polynomial
from .specio import (curve_from_dict, curve_to_dict, dump_curve, load_curve,
                     load_curve_record)
from .svg import render_svg
