#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cloneval/clone_pair.hpp"
#include "cloneval/dataset.hpp"
#include "cloneval/fragment.hpp"
#include "cloneval/neural_net.hpp"
#include "cloneval/prediction.hpp"

namespace testsupport {

std::filesystem::path data_dir();
std::filesystem::path corpus_dir();
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "cloneval");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Textbook prefix-table LCS length.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Random Java-like statement lists. A program is rendered to source text
// under a Style; two renderings that differ only in layout/comments must
// normalize identically at Type1, and renderings that also differ in
// identifier names and literal values must agree at Type2.
struct GenToken {
  enum Kind { kFixed, kIdent, kNumber, kString, kChar } kind = kFixed;
  std::string text;
};

struct GenStatement {
  std::vector<GenToken> head;  // full statement, or block header without "{"
  std::vector<GenStatement> body;
  bool block = false;
  std::vector<GenStatement> else_body;
  bool has_else = false;
};

struct Program {
  std::vector<GenStatement> statements;
};

Program random_program(std::mt19937_64& rng, int statements = 6);

struct Style {
  bool vary_layout = false;    // spacing, indentation, statement/brace line breaks
  bool add_comments = false;   // block comments between tokens, line comments at line ends
  bool rename = false;         // fresh identifier text for every occurrence
  bool change_literals = false;
};

std::string render(const Program& program, const Style& style, std::mt19937_64& rng);

// Mean cross-entropy of a network, computed row by row without Eigen
// expressions shared with the library.
double reference_nn_loss(const cloneval::NeuralNetModel& model, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// Largest relative error between backprop and central differences (eps
// 1e-5) over every weight and bias of a random small network. Denominators
// below 1e-6 are raised to 1e-6 so that vanishing partials compare on an
// absolute scale.
double gradient_check(std::mt19937_64& rng);

// Pr[true clone] from a direct evaluation of the naive Bayes product in long
// double: prior times product over features of the Gaussian KDE, with each
// bandwidth from an independent Silverman implementation.
long double reference_bayes_posterior(const cloneval::TrainingSet& ts, const cloneval::FeatureVector& x);
double reference_silverman(std::vector<double> samples);

// Fraction of (positive, negative) pairs ranked correctly, ties counting 1/2.
double mann_whitney_auc(const std::vector<double>& scores, const std::vector<bool>& positive);

cloneval::ClonePair make_pair(const std::string& a, const std::string& b, std::string id = "p");

}  // namespace testsupport
