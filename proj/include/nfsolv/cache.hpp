#pragma once

#include <cstdint>
#include <string>

#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/scattering.hpp"

namespace nfsolv {

// Content hashes keying the scattering-state sidecar files.
std::uint64_t hash_potential(const PotentialSpec& spec);
std::uint64_t hash_grid(const Grid& grid);

std::string state_cache_path(const std::string& cache_dir,
                             const PotentialSpec& V, const Grid& grid,
                             const Vec3& k);

// Binary sidecar: header (k, iterations, tail bound, certificates) followed by
// the raw little-endian complex array.
void save_state(const std::string& path, const ScatteringState& state);
bool load_state(const std::string& path, ScatteringState& state);

// Generic complex-array dump used for transform and tensor exports
// (shape header + little-endian complex values).
void save_field(const std::string& path, const Field& field,
                const std::vector<int>& shape);
bool load_field(const std::string& path, Field& field, std::vector<int>& shape);

}  // namespace nfsolv
