#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rsw/algebra.hpp"

namespace rsw {

// The constant matrices the identity suites read. Starts as the library's
// own matrices; a mutation perturbs one entry to prove the suite notices.
class MatrixSet {
 public:
  static MatrixSet library();

  const ComplexMatrix& operator[](const std::string& name) const;
  ComplexMatrix& at(const std::string& name);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, ComplexMatrix> m_;
};

struct Mutation {
  enum class Op { negate, set, scale };
  std::string name;
  std::string matrix;
  std::size_t row = 0, col = 0;
  Op op = Op::negate;
  cplx value{0.0, 0.0};
  std::vector<std::string> expect_failed;
};

Mutation load_mutation(const std::filesystem::path& path);
void apply_mutation(MatrixSet& set, const Mutation& m);

enum class VerifyScope { algebra, operators, evolution, all };
// Throws PreconditionError for an unknown name.
VerifyScope parse_scope(const std::string& name);
std::string scope_name(VerifyScope s);

struct CheckResult {
  std::string name;
  double norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string scope;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  std::size_t failed() const;
  std::vector<std::string> failed_names() const;
  // Stable key order and number formatting, so equal runs give equal bytes.
  std::string to_json() const;
  // One aligned line per check.
  std::string to_table() const;
};

VerifyReport run_verify(VerifyScope scope, std::uint64_t seed, const MatrixSet& set = MatrixSet::library());

}  // namespace rsw
