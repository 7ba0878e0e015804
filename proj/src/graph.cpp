#include "localppr/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace localppr {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(std::vector<std::uint64_t> offsets, std::vector<NodeId> neighbors,
             std::vector<std::uint64_t> original_ids)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)), original_ids_(std::move(original_ids)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != neighbors_.size())
    throw std::invalid_argument("inconsistent CSR offsets");
  const std::size_t n = offsets_.size() - 1;
  if (original_ids_.size() != n) throw std::invalid_argument("remap table size mismatch");
  degrees_.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (offsets_[u + 1] < offsets_[u]) throw std::invalid_argument("CSR offsets not monotone");
    degrees_[u] = static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
  }
  for (NodeId v : neighbors_)
    if (v >= n) throw std::invalid_argument("neighbor id out of range");
}

std::optional<NodeId> Graph::find_original(std::uint64_t original) const {
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<NodeId>(it - original_ids_.begin());
}

std::uint64_t volume(const Graph& g, std::span<const NodeId> nodes) {
  std::uint64_t vol = 0;
  for (NodeId u : nodes) vol += g.degree(u);
  return vol;
}

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // smaller root wins so the root is the component's smallest id
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

Graph build_graph(std::vector<std::pair<std::uint64_t, std::uint64_t>> edges, const PreprocessOptions& options) {
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) throw EmptyGraphError("graph has no edges after preprocessing");

  std::vector<std::uint64_t> ids;
  ids.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<NodeId>::max()) throw std::length_error("too many nodes");

  auto compact = [&ids](std::uint64_t id) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> local;
  local.reserve(edges.size());
  for (const auto& [a, b] : edges) local.emplace_back(compact(a), compact(b));
  edges.clear();
  edges.shrink_to_fit();

  const std::size_t n_all = ids.size();
  std::vector<std::uint32_t> label(n_all);
  std::size_t n = n_all;
  if (options.keep_largest_component) {
    DisjointSets sets(n_all);
    for (const auto& [a, b] : local) sets.unite(a, b);
    std::vector<std::uint32_t> size(n_all, 0);
    for (std::uint32_t u = 0; u < n_all; ++u) ++size[sets.find(u)];
    // roots are component minima, so the first maximum is the tie-break winner
    std::uint32_t best = 0;
    for (std::uint32_t u = 0; u < n_all; ++u)
      if (size[u] > size[best]) best = u;
    constexpr auto dropped = std::numeric_limits<std::uint32_t>::max();
    n = 0;
    for (std::uint32_t u = 0; u < n_all; ++u) label[u] = sets.find(u) == best ? static_cast<std::uint32_t>(n++) : dropped;
    std::erase_if(local, [&](const auto& e) { return label[e.first] == dropped; });
    for (auto& [a, b] : local) {
      a = label[a];
      b = label[b];
    }
    std::vector<std::uint64_t> kept;
    kept.reserve(n);
    for (std::uint32_t u = 0; u < n_all; ++u)
      if (label[u] != dropped) kept.push_back(ids[u]);
    ids = std::move(kept);
  }

  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (const auto& [a, b] : local) {
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeId> neighbors(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // edges are sorted by (a, b) with a < b: filling a's list in order keeps it
  // sorted, b's list collects a's in ascending order too, but interleaving the
  // two directions breaks that, hence the per-list sort
  for (const auto& [a, b] : local) {
    neighbors[cursor[a]++] = b;
    neighbors[cursor[b]++] = a;
  }
  for (std::size_t u = 0; u < n; ++u)
    std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
              neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]));
  return Graph(std::move(offsets), std::move(neighbors), std::move(ids));
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

const char* skip_space(const char* p, const char* end) {
  while (p != end && is_space(*p)) ++p;
  return p;
}

}  // namespace

Graph load_edge_list(std::istream& in, const PreprocessOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = p + line.size();
    p = skip_space(p, end);
    if (p == end || *p == '#') continue;
    std::uint64_t ends[2];
    for (auto& value : ends) {
      p = skip_space(p, end);
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc{} || (next != end && !is_space(*next)))
        throw ParseError(line_no, "expected two non-negative integer node ids");
      p = next;
    }
    p = skip_space(p, end);
    if (p != end) {
      double weight = 0;
      auto [next, ec] = std::from_chars(p, end, weight);
      if (ec == std::errc{} && skip_space(next, end) == end)
        throw ParseError(line_no, "weighted edges are not supported");
      throw ParseError(line_no, "unexpected trailing characters");
    }
    edges.emplace_back(ends[0], ends[1]);
  }
  return build_graph(std::move(edges), options);
}

Graph load_edge_list(const std::filesystem::path& path, const PreprocessOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_edge_list(in, options);
}

namespace {

constexpr char kMagic[4] = {'L', 'P', 'R', 'G'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
T byteswap(T v) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
  std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

template <typename T>
void write_array(std::ostream& out, std::span<const T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (T v : values) {
      T le = byteswap(v);
      out.write(reinterpret_cast<const char*>(&le), sizeof(T));
    }
  }
}

template <typename T>
void write_scalar(std::ostream& out, T v) {
  write_array<T>(out, std::span<const T>(&v, 1));
}

template <typename T>
void read_array(std::istream& in, std::span<T> values) {
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
  if (!in) throw FormatError("truncated binary graph");
  if constexpr (std::endian::native != std::endian::little)
    for (T& v : values) v = byteswap(v);
}

template <typename T>
T read_scalar(std::istream& in) {
  T v{};
  read_array<T>(in, std::span<T>(&v, 1));
  return v;
}

}  // namespace

void save_binary(const Graph& g, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  write_scalar<std::uint32_t>(out, kVersion);
  write_scalar<std::uint64_t>(out, g.num_nodes());
  write_scalar<std::uint64_t>(out, g.num_edges());
  write_array(out, g.offsets());
  write_array(out, g.adjacency());
  write_array(out, g.original_ids());
  if (!out) throw std::runtime_error("failed writing binary graph");
}

Graph load_binary(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw FormatError("bad magic, not an LPRG file");
  const auto version = read_scalar<std::uint32_t>(in);
  if (version != kVersion) throw FormatError("unsupported LPRG version " + std::to_string(version));
  const auto n = read_scalar<std::uint64_t>(in);
  const auto m = read_scalar<std::uint64_t>(in);
  if (n > std::numeric_limits<NodeId>::max() || m > (std::uint64_t{1} << 40)) throw FormatError("implausible sizes");
  std::vector<std::uint64_t> offsets(n + 1);
  std::vector<NodeId> neighbors(2 * m);
  std::vector<std::uint64_t> original(n);
  read_array<std::uint64_t>(in, offsets);
  read_array<NodeId>(in, neighbors);
  read_array<std::uint64_t>(in, original);
  try {
    return Graph(std::move(offsets), std::move(neighbors), std::move(original));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

void save_binary(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  save_binary(g, out);
}

Graph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_binary(in);
}

std::uint64_t content_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

Graph load_graph(const std::filesystem::path& path, const PreprocessOptions& options,
                 const std::optional<std::filesystem::path>& cache_dir) {
  if (path.extension() == ".lprg") return load_binary(path);
  if (!cache_dir) return load_edge_list(path, options);

  std::ostringstream name;
  name << std::hex << content_hash(path) << (options.keep_largest_component ? "-lcc" : "-all") << ".lprg";
  const auto cached = *cache_dir / name.str();
  if (std::filesystem::exists(cached)) {
    try {
      return load_binary(cached);
    } catch (const FormatError&) {
      // stale or corrupt entry: rebuild below
    }
  }
  Graph g = load_edge_list(path, options);
  std::filesystem::create_directories(*cache_dir);
  const auto tmp = cached.string() + ".tmp";
  save_binary(g, std::filesystem::path(tmp));
  std::filesystem::rename(tmp, cached);
  return g;
}

}  // namespace localppr
