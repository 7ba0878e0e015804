#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace localppr {

using NodeId = std::uint32_t;

// Raised for a malformed edge-list line. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raised when preprocessing leaves no edges.
class EmptyGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for a corrupt or incompatible binary CSR file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PreprocessOptions {
  // When false every component is kept; solvers still require d_u > 0.
  bool keep_largest_component = true;
};

// Immutable undirected simple graph in CSR form.
// Nodes are dense ids 0..n-1. Neighbor lists are sorted and free of
// self-loops and duplicates; adjacency is symmetric. `original_ids()[u]`
// is the id node `u` carried in the input (ascending in `u`).
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::uint64_t> offsets, std::vector<NodeId> neighbors,
        std::vector<std::uint64_t> original_ids);

  std::size_t num_nodes() const noexcept { return degrees_.size(); }
  std::uint64_t num_edges() const noexcept { return neighbors_.size() / 2; }
  // vol(V) = 2m.
  std::uint64_t total_volume() const noexcept { return neighbors_.size(); }

  std::uint32_t degree(NodeId u) const {
    check(u);
    return degrees_[u];
  }
  std::span<const NodeId> neighbors(NodeId u) const {
    check(u);
    return {neighbors_.data() + offsets_[u], degrees_[u]};
  }

  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return neighbors_; }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
  std::span<const std::uint64_t> original_ids() const noexcept { return original_ids_; }

  // Dense id of an input node id, if it survived preprocessing.
  std::optional<NodeId> find_original(std::uint64_t original) const;

  bool operator==(const Graph& other) const = default;

 private:
  void check(NodeId u) const {
    if (u >= degrees_.size()) throw std::out_of_range("node id " + std::to_string(u) + " out of range");
  }

  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::uint64_t> original_ids_;
};

// vol(S) = sum of degrees over S. Throws std::out_of_range for bad ids.
std::uint64_t volume(const Graph& g, std::span<const NodeId> nodes);

// Undirect, dedupe, drop self-loops, keep the largest component (ties go to
// the component holding the smallest original id), relabel densely.
Graph build_graph(std::vector<std::pair<std::uint64_t, std::uint64_t>> edges,
                  const PreprocessOptions& options = {});

// SNAP-style edge list: two non-negative integers per line, '#' comments.
Graph load_edge_list(std::istream& in, const PreprocessOptions& options = {});
Graph load_edge_list(const std::filesystem::path& path, const PreprocessOptions& options = {});

// Binary CSR ("LPRG" v1, little-endian); see docs/formats.md.
void save_binary(const Graph& g, std::ostream& out);
Graph load_binary(std::istream& in);
void save_binary(const Graph& g, const std::filesystem::path& path);
Graph load_binary(const std::filesystem::path& path);

// 64-bit FNV-1a of the file contents.
std::uint64_t content_hash(const std::filesystem::path& path);

// Loads `path`, going through `<cache_dir>/<hash>.lprg` when a cache
// directory is given. Files ending in ".lprg" are read as binary directly.
Graph load_graph(const std::filesystem::path& path, const PreprocessOptions& options = {},
                 const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

}  // namespace localppr
