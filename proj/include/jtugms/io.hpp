#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "jtugms/gaussian.hpp"
#include "jtugms/graph.hpp"

namespace jtugms {

/// Parse or file-access failure; the message names the path (and line).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Provenance stamped into every artifact.
struct Stamp {
    std::string config_hash;
    std::uint64_t seed = 0;
};

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);
/// Hash of the canonical (sorted-key, compact) JSON dump.
std::string config_hash(const nlohmann::json& config);

/// Writes to a temporary sibling file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Comma-separated reals, one sample per row. Lines starting with '#' are
/// skipped, as is a first line that does not parse as numbers (header).
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
std::string matrix_csv(const Eigen::MatrixXd& m, const Stamp* stamp = nullptr);

Dataset read_dataset_csv(const std::filesystem::path& path);
/// Loads a precision matrix and validates it (symmetric, PD).
GaussianModel read_precision_csv(const std::filesystem::path& path);

/// Edge list: optional '#' comment lines, a header `p=<n>`, then one
/// `u<TAB>v` line per edge with u < v.
Graph parse_edge_list(const std::string& text, const std::string& origin = "<string>");
Graph read_edge_list(const std::filesystem::path& path);
std::string edge_list_text(const Graph& g, const Stamp* stamp = nullptr);
std::string edge_list_text(int p, const EdgeSet& edges, const Stamp* stamp = nullptr);

/// Prefixes a DOT document with a stamp comment.
std::string stamped_dot(const std::string& dot, const Stamp& stamp);

}  // namespace jtugms
