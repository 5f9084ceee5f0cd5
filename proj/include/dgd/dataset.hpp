#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dgd/problems.hpp"

namespace dgd {

/// A generated problem instance plus the seed that produced it.
///
/// On disk it is a line-oriented text container:
///
///   dgd-dataset 1
///   problem <ridge_ls|logistic|pl_ls>
///   m <rows>  /  d <cols>  /  seed <seed>  /  mu_reg <weight>
///   lambda_max, lambda_min_ata, lambda_min_aat   (informational)
///   A            followed by m lines of d numbers, row-major
///   y | b        followed by m lines of one number
///   end
///
/// Numbers use the shortest round-trip decimal form, so a reload reproduces
/// the in-memory data bit for bit.
struct Dataset {
  std::uint64_t seed = 0;
  AnyProblem problem;
};

inline constexpr int kDatasetVersion = 1;

/// Generates the instance for kind with the given shape, seed and ridge weight
/// (ignored for pl_ls).
Dataset generate_dataset(ProblemKind kind, std::size_t m, std::size_t d, std::uint64_t seed,
                         double mu_reg = 0.1);

std::string serialize_dataset(const Dataset& dataset);
/// Throws std::invalid_argument on malformed input or version mismatch.
Dataset parse_dataset(std::string_view text);

/// Throws std::runtime_error on I/O failure.
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace dgd
