#ifndef GRPISO_IO_HPP
#define GRPISO_IO_HPP

#include <iosfwd>
#include <string>

#include "grpiso/blackbox.hpp"
#include "grpiso/matrix.hpp"
#include "grpiso/setdlog.hpp"

namespace grpiso {

// Line-based plain-text formats. All readers throw std::invalid_argument
// with a short description on malformed input.

/// Spec file: `key = value` lines with keys abelian, m, action (rows
/// separated by `;`), scramble_seed. `#` starts a comment.
ClassSGroupSpec read_spec(std::istream& in);
ClassSGroupSpec read_spec_file(const std::string& path);
void write_spec(std::ostream& out, const ClassSGroupSpec& spec);
void write_spec_file(const std::string& path, const ClassSGroupSpec& spec);

/// Multiplication-table file: first line n, then n lines of n indices.
std::vector<std::vector<std::size_t>> read_table(std::istream& in);
std::vector<std::vector<std::size_t>> read_table_file(const std::string& path);

/// Matrix format: first line "p r", then r lines of r integers.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);
/// All matrices in a file, in order.
std::vector<Matrix> read_matrix_file(const std::string& path);

/// Set Discrete Logarithm file: u blocks, each a "p d" header line followed
/// by two lines of field elements (comma-separated coefficient lists, lowest
/// degree first, space-separated elements; S line then T line). Elements of
/// GF(p^d) with d >= 2 live in the canonical splitting_field(p, d).
std::pair<std::vector<FieldMultiset>, std::vector<FieldMultiset>> read_setdlog(
    std::istream& in);
std::pair<std::vector<FieldMultiset>, std::vector<FieldMultiset>>
read_setdlog_file(const std::string& path);

std::string elem_to_text(const FFElem& e);

}  // namespace grpiso

#endif
