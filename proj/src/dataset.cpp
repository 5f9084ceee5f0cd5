#include "dgd/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dgd/text_format.hpp"

namespace dgd {

namespace {

struct RawData {
  ProblemKind kind;
  double mu_reg;
  const Matrix* A;
  const Vector* target;
  const GramSpectrum* spectrum;
};

RawData raw_of(const AnyProblem& problem) {
  return std::visit(
      [](const auto& p) -> RawData {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PLLeastSquares>) {
          return {ProblemKind::pl_ls, 0.0, &p.A(), &p.b(), &p.spectrum()};
        } else if constexpr (std::is_same_v<P, RidgeLSProblem>) {
          return {ProblemKind::ridge_ls, p.mu_reg(), &p.A(), &p.y(), &p.spectrum()};
        } else {
          return {ProblemKind::logistic, p.mu_reg(), &p.A(), &p.y(), &p.spectrum()};
        }
      },
      problem);
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    while (pos_ <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) return line;
    }
    fail("unexpected end of input");
  }

  /// Reads "key value" and returns value.
  std::string_view field(std::string_view key) {
    std::string_view line = next();
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos || line.substr(0, space) != key) {
      fail("expected field '" + std::string(key) + "'");
    }
    return line.substr(space + 1);
  }

  void expect(std::string_view literal) {
    if (next() != literal) fail("expected '" + std::string(literal) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("dataset line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<double> split_numbers(std::string_view line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    out.push_back(parse_double(line.substr(pos, end - pos)));
    pos = end;
  }
  return out;
}

}  // namespace

Dataset generate_dataset(ProblemKind kind, std::size_t m, std::size_t d, std::uint64_t seed,
                         double mu_reg) {
  switch (kind) {
    case ProblemKind::ridge_ls:
      return Dataset{seed, gen_regression_data(m, d, seed, mu_reg)};
    case ProblemKind::logistic:
      return Dataset{seed, gen_classification_data(m, d, seed, mu_reg)};
    case ProblemKind::pl_ls:
      return Dataset{seed, gen_pl_data(m, d, seed)};
  }
  throw std::invalid_argument("generate_dataset: unknown problem kind");
}

std::string serialize_dataset(const Dataset& dataset) {
  const RawData raw = raw_of(dataset.problem);
  const Matrix& A = *raw.A;
  std::string out;
  out.reserve(static_cast<std::size_t>(A.size()) * 24 + 256);
  auto field = [&out](std::string_view key, const std::string& value) {
    out.append(key).append(" ").append(value).append("\n");
  };
  out.append("dgd-dataset ").append(std::to_string(kDatasetVersion)).append("\n");
  field("problem", std::string(to_string(raw.kind)));
  field("m", std::to_string(A.rows()));
  field("d", std::to_string(A.cols()));
  field("seed", std::to_string(dataset.seed));
  field("mu_reg", format_double(raw.mu_reg));
  field("lambda_max", format_double(raw.spectrum->lambda_max));
  field("lambda_min_ata", format_double(raw.spectrum->lambda_min_ata));
  field("lambda_min_aat", format_double(raw.spectrum->lambda_min_aat));
  out.append("A\n");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j > 0) out.push_back(' ');
      out.append(format_double(A(i, j)));
    }
    out.push_back('\n');
  }
  out.append(raw.kind == ProblemKind::pl_ls ? "b\n" : "y\n");
  for (Eigen::Index i = 0; i < raw.target->size(); ++i) {
    out.append(format_double((*raw.target)[i])).push_back('\n');
  }
  out.append("end\n");
  return out;
}

Dataset parse_dataset(std::string_view text) {
  LineReader in(text);
  const std::string header = "dgd-dataset " + std::to_string(kDatasetVersion);
  if (in.next() != header) in.fail("missing or unsupported header (want '" + header + "')");

  const ProblemKind kind = parse_problem_kind(in.field("problem"));
  const auto m = static_cast<Eigen::Index>(parse_uint(in.field("m")));
  const auto d = static_cast<Eigen::Index>(parse_uint(in.field("d")));
  if (m < 1 || d < 1) in.fail("m and d must be positive");
  const std::uint64_t seed = parse_uint(in.field("seed"));
  const double mu_reg = parse_double(in.field("mu_reg"));
  in.field("lambda_max");
  in.field("lambda_min_ata");
  in.field("lambda_min_aat");

  in.expect("A");
  Matrix A(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::vector<double> row = split_numbers(in.next());
    if (static_cast<Eigen::Index>(row.size()) != d) in.fail("row has wrong number of entries");
    for (Eigen::Index j = 0; j < d; ++j) A(i, j) = row[static_cast<std::size_t>(j)];
  }
  in.expect(kind == ProblemKind::pl_ls ? "b" : "y");
  Vector target(m);
  for (Eigen::Index i = 0; i < m; ++i) target[i] = parse_double(in.next());
  in.expect("end");

  switch (kind) {
    case ProblemKind::ridge_ls:
      return Dataset{seed, RidgeLSProblem(std::move(A), std::move(target), mu_reg)};
    case ProblemKind::logistic:
      return Dataset{seed, LogisticProblem(std::move(A), std::move(target), mu_reg)};
    case ProblemKind::pl_ls:
      return Dataset{seed, PLLeastSquares(std::move(A), std::move(target))};
  }
  in.fail("unknown problem kind");
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << serialize_dataset(dataset);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

}  // namespace dgd
