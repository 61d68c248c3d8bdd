#include "nfsolv/cache.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nfsolv {

namespace {

constexpr std::uint64_t fnv_offset = 14695981039346656037ull;
constexpr std::uint64_t fnv_prime = 1099511628211ull;

std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t h = fnv_offset) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= fnv_prime;
  }
  return h;
}

std::uint64_t hash_doubles(std::initializer_list<double> vals,
                           std::uint64_t h = fnv_offset) {
  for (double v : vals) h = fnv1a(&v, sizeof(v), h);
  return h;
}

constexpr char state_magic[8] = {'N', 'F', 'S', 'V', 'S', 'T', '0', '1'};
constexpr char field_magic[8] = {'N', 'F', 'S', 'V', 'F', 'D', '0', '1'};

}  // namespace

std::uint64_t hash_potential(const PotentialSpec& spec) {
  std::uint64_t h = fnv_offset;
  const int fam = int(spec.family);
  h = fnv1a(&fam, sizeof(fam), h);
  return hash_doubles({spec.beta, spec.c, spec.lambda, spec.v_plus, spec.q}, h);
}

std::uint64_t hash_grid(const Grid& grid) {
  std::uint64_t h = fnv_offset;
  h = fnv1a(&grid.dim, sizeof(grid.dim), h);
  h = fnv1a(&grid.points_per_axis, sizeof(grid.points_per_axis), h);
  return hash_doubles({grid.extent}, h);
}

std::string state_cache_path(const std::string& cache_dir,
                             const PotentialSpec& V, const Grid& grid,
                             const Vec3& k) {
  const std::uint64_t kh = hash_doubles({k[0], k[1], k[2]});
  std::ostringstream os;
  os << cache_dir << "/state_" << std::hex << hash_potential(V) << "_"
     << hash_grid(grid) << "_" << kh << ".bin";
  return os.str();
}

void save_state(const std::string& path, const ScatteringState& state) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(path).parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("save_state: cannot open " + tmp);
    os.write(state_magic, sizeof(state_magic));
    os.write(reinterpret_cast<const char*>(state.k.data()), 3 * sizeof(double));
    const std::int64_t iters = state.iterations;
    os.write(reinterpret_cast<const char*>(&iters), sizeof(iters));
    os.write(reinterpret_cast<const char*>(&state.series_tail_bound),
             sizeof(double));
    os.write(reinterpret_cast<const char*>(&state.sup_norm), sizeof(double));
    os.write(reinterpret_cast<const char*>(&state.q_norm_bound), sizeof(double));
    os.write(reinterpret_cast<const char*>(&state.residual_sup), sizeof(double));
    const std::uint64_t count = state.values.size();
    os.write(reinterpret_cast<const char*>(&count), sizeof(count));
    os.write(reinterpret_cast<const char*>(state.values.data()),
             std::streamsize(count * sizeof(cplx)));
  }
  fs::rename(tmp, path);
}

bool load_state(const std::string& path, ScatteringState& state) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, state_magic, sizeof(magic)) != 0) return false;
  is.read(reinterpret_cast<char*>(state.k.data()), 3 * sizeof(double));
  std::int64_t iters = 0;
  is.read(reinterpret_cast<char*>(&iters), sizeof(iters));
  state.iterations = int(iters);
  is.read(reinterpret_cast<char*>(&state.series_tail_bound), sizeof(double));
  is.read(reinterpret_cast<char*>(&state.sup_norm), sizeof(double));
  is.read(reinterpret_cast<char*>(&state.q_norm_bound), sizeof(double));
  is.read(reinterpret_cast<char*>(&state.residual_sup), sizeof(double));
  std::uint64_t count = 0;
  is.read(reinterpret_cast<char*>(&count), sizeof(count));
  if (!is) return false;
  state.values.resize(count);
  is.read(reinterpret_cast<char*>(state.values.data()),
          std::streamsize(count * sizeof(cplx)));
  return bool(is);
}

void save_field(const std::string& path, const Field& field,
                const std::vector<int>& shape) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(path).parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw Error("save_field: cannot open " + tmp);
    os.write(field_magic, sizeof(field_magic));
    const std::int32_t rank = std::int32_t(shape.size());
    os.write(reinterpret_cast<const char*>(&rank), sizeof(rank));
    for (int s : shape) {
      const std::int64_t v = s;
      os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    os.write(reinterpret_cast<const char*>(field.data()),
             std::streamsize(field.size() * sizeof(cplx)));
  }
  fs::rename(tmp, path);
}

bool load_field(const std::string& path, Field& field,
                std::vector<int>& shape) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, field_magic, sizeof(magic)) != 0) return false;
  std::int32_t rank = 0;
  is.read(reinterpret_cast<char*>(&rank), sizeof(rank));
  shape.resize(std::size_t(rank));
  std::size_t total = 1;
  for (int i = 0; i < rank; ++i) {
    std::int64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    shape[std::size_t(i)] = int(v);
    total *= std::size_t(v);
  }
  if (!is) return false;
  field.resize(total);
  is.read(reinterpret_cast<char*>(field.data()),
          std::streamsize(total * sizeof(cplx)));
  return bool(is);
}

}  // namespace nfsolv
