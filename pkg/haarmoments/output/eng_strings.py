# pylint: skip-file

"""
English Strings.

All strings shown to users of the command line tool come from this
file; logger messages are hardcoded and shouldn't be in here. Error
strings come in _title/_desc pairs and are looked up by the display
type an error was raised with.
"""

"""''''''''''''
General Errors
''''''''''''"""

# General Headers
command_error_header = "Error: "
command_error_logger_header = "Command error {} triggered by command: {}"
command_error_usage = "Usage error: {}"
command_error_internal = "Internal error ({}): {}"

# Argument errors
error_weight_mismatch_title = "Weight mismatch"
error_weight_mismatch_desc = "Partitions {} and {} do not have the same weight."
error_bad_partition_title = "Invalid partition"
error_bad_partition_desc = "Cannot read a partition from {!r}; parts must be non-negative integers."
error_bad_permutation_title = "Invalid permutation"
error_bad_permutation_desc = "{!r} is not a permutation of 1..{}."
error_bad_rational_title = "Invalid rational"
error_bad_rational_desc = "Cannot read an exact rational from {!r}."
error_negative_weight_title = "Negative weight"
error_negative_weight_desc = "Expected a non-negative integer, got {}."
error_bad_dimension_title = "Invalid dimension"
error_bad_dimension_desc = "Expected {} >= {}, got {}."
error_dimension_mismatch_title = "Dimension mismatch"
error_dimension_mismatch_desc = "Operator dimensions {} and {} are incompatible."
error_not_square_title = "Operator is not square"
error_not_square_desc = "Expected a square matrix, got {} rows and a row of length {}."
error_not_tensor_power_title = "Not a tensor power space"
error_not_tensor_power_desc = "Operator of size {} is not an operator on (C^{})^(x{})."
error_index_out_of_range_title = "Index out of range"
error_index_out_of_range_desc = "Index {} is outside 1..{}."
error_tuple_length_title = "Tuple length mismatch"
error_tuple_length_desc = "Index tuples have lengths {}; they must all be equal."
error_unsupported_order_title = "Unsupported order"
error_unsupported_order_desc = "Visibility moments exist for orders 2 and 4, got {}."
error_empty_vector_title = "Empty vector"
error_empty_vector_desc = "A variable vector needs at least one entry."
error_repeated_points_title = "Repeated points"
error_repeated_points_desc = "The bialternant needs distinct points, got {}."
error_unknown_identity_title = "Unknown identity"
error_unknown_identity_desc = "No identity named {!r}. Registered identities: {}."
error_bad_matrix_file_title = "Malformed matrix file"
error_bad_matrix_file_desc = "{} (row {}, column {})."
error_bad_matrix_shape_title = "Malformed matrix file"
error_bad_matrix_shape_desc = "{}"
error_bad_config_title = "Invalid configuration"
error_bad_config_desc = "Configuration value {} = {!r} is invalid: {}."
error_bad_argument_type_title = "Invalid argument type"
error_bad_argument_type_desc = "{}"
error_too_few_samples_title = "Too few samples"
error_too_few_samples_desc = "Monte Carlo estimates need at least 2 samples, got {}."
error_bad_parameter_title = "Invalid parameter"
error_bad_parameter_desc = "{}"

# Resource errors
error_dense_cap_title = "Operator too large"
error_dense_cap_desc = "An operator of dimension {} exceeds the dense cap of {}."
error_table_cap_title = "Character table too large"
error_table_cap_desc = "Character tables are capped at k = {}, got k = {}."
error_quadrature_cap_title = "Quadrature too large"
error_quadrature_cap_desc = "Weyl quadrature over U({}) with {} points per axis exceeds the cap ({})."

# Consistency errors
error_consistency_title = "Consistency check failed"
error_consistency_desc = "{}"
error_not_real_title = "Unexpected imaginary part"
error_not_real_desc = "Expected a real value for {}, got {}."

"""''''''''''''''''
Verification output
''''''''''''''''"""

verify_pass = "PASS"
verify_fail = "FAIL"
verify_skip = "SKIP"
verify_detail_pass = "{checked} checks"
verify_detail_fail = "{failed} of {checked} checks failed, first: {first}"
verify_detail_skip = "no sweep point matches the parameters"
verify_line = "{status} {name}: {detail}"
verify_summary = "{passed}/{total} identities passed"
mcverify_line = "{status} {identity}: exact {exact}, estimate {estimate} +- {stderr} (z = {z})"
mcverify_matrix_line = "{status} {identity}: max deviation {deviation} over {entries} entries, largest stderr {stderr} (z = {z})"

"""'''''''''''''
Command output
'''''''''''''"""

wg_header = "Weingarten function, k = {k}, d = {d}"
wg_row = "  {label:>12}  {value}"
chartable_header = "Character table of S_{k} (rows: irreps, columns: cycle types)"
moment_line = "{value}"
twirl_coefficient_row = "  Delta{label} = {value}"
twirl_header = "Twirl of X^(x{k}) over U({d})"
schur_line = "s_{label}({vector}) = {value}"
kron_line = "g({first}; {second}; {third}) = {value}"
sample_header = "Haar sample {index} (unitarity residual {residual})"
quad_line = "Weyl quadrature over U({n}), grid {grid}: {value} (exact {exact})"
twirl_operator_header = "Twirl of an operator on (C^{d})^(x{k})"
matrix_row = "  {row}"
chartable_corner = "lambda \\ gamma"

"""''''''''''''''''
Command line usage
''''''''''''''''"""

error_usage_title = "Usage error"
error_usage_desc = "{}"
