#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testsupport {

std::filesystem::path data_dir() { return CLONEVAL_TEST_DATA_DIR; }
std::filesystem::path corpus_dir() { return CLONEVAL_TEST_CORPUS_DIR; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  const auto name = tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++);
  path_ = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
bool chance(Rng& rng, int percent) { return pick(rng, 100) < percent; }

const char* const kNames[] = {"count", "total", "args", "buffer", "node", "items", "result", "index", "value", "map"};
const char* const kTypes[] = {"String", "List", "Node", "Builder"};
const char* const kPrims[] = {"int", "double", "long", "boolean"};
const char* const kBinOps[] = {"+", "-", "*", "/", "%", "==", "!=", "<", ">", "<=", ">=", "&&", "||"};
const char* const kNumbers[] = {"0", "1", "42", "3.5", "0x1F", "10L", "1e3", "2.0f"};
const char* const kStrings[] = {"\"\"", "\"text\"", "\"a, b\"", "\"quote \\\" inside\"", "\"} {\"", "\"//no\""};
const char* const kChars[] = {"'a'", "'\\n'", "'\\''", "'{'"};

GenToken fixed(std::string t) { return {GenToken::kFixed, std::move(t)}; }
GenToken ident(Rng& rng) { return {GenToken::kIdent, kNames[pick(rng, 10)]}; }

void expr(Rng& rng, std::vector<GenToken>& out, int depth) {
  const int choice = depth >= 2 ? pick(rng, 4) : pick(rng, 11);
  switch (choice) {
    case 0:
      out.push_back(ident(rng));
      break;
    case 1:
      out.push_back({GenToken::kNumber, kNumbers[pick(rng, 8)]});
      break;
    case 2:
      out.push_back({GenToken::kString, kStrings[pick(rng, 6)]});
      break;
    case 3:
      out.push_back(chance(rng, 50) ? GenToken{GenToken::kChar, kChars[pick(rng, 4)]}
                                    : fixed(chance(rng, 50) ? "null" : "true"));
      break;
    case 4:
      out.push_back(ident(rng));
      out.push_back(fixed("."));
      out.push_back(ident(rng));
      break;
    case 5:
    case 6: {
      out.push_back(ident(rng));
      out.push_back(fixed("("));
      const int args = pick(rng, 3);
      for (int i = 0; i < args; ++i) {
        if (i > 0) out.push_back(fixed(","));
        expr(rng, out, depth + 1);
      }
      out.push_back(fixed(")"));
      break;
    }
    case 7:
      out.push_back(ident(rng));
      out.push_back(fixed("["));
      expr(rng, out, depth + 1);
      out.push_back(fixed("]"));
      break;
    case 8:
      out.push_back(fixed("("));
      expr(rng, out, depth + 1);
      out.push_back(fixed(")"));
      break;
    case 9:
      out.push_back(fixed("new"));
      out.push_back({GenToken::kIdent, kTypes[pick(rng, 4)]});
      out.push_back(fixed("("));
      expr(rng, out, depth + 1);
      out.push_back(fixed(")"));
      break;
    default:
      expr(rng, out, depth + 1);
      out.push_back(fixed(kBinOps[pick(rng, 13)]));
      if (chance(rng, 15)) out.push_back(fixed("-"));
      expr(rng, out, depth + 1);
      break;
  }
}

GenStatement statement(Rng& rng, int depth);

std::vector<GenStatement> body(Rng& rng, int depth) {
  std::vector<GenStatement> out;
  const int n = 1 + pick(rng, 3);
  for (int i = 0; i < n; ++i) out.push_back(statement(rng, depth + 1));
  return out;
}

GenStatement statement(Rng& rng, int depth) {
  GenStatement s;
  auto& h = s.head;
  const int choice = depth >= 2 ? pick(rng, 5) : pick(rng, 9);
  switch (choice) {
    case 0:
      if (chance(rng, 50)) {
        h.push_back(fixed(kPrims[pick(rng, 4)]));
      } else {
        h.push_back({GenToken::kIdent, kTypes[pick(rng, 4)]});
      }
      h.push_back(ident(rng));
      h.push_back(fixed("="));
      expr(rng, h, 0);
      h.push_back(fixed(";"));
      break;
    case 1:
      h.push_back(ident(rng));
      h.push_back(fixed(chance(rng, 70) ? "=" : "+="));
      expr(rng, h, 0);
      h.push_back(fixed(";"));
      break;
    case 2:
      h.push_back(ident(rng));
      h.push_back(fixed("."));
      h.push_back(ident(rng));
      h.push_back(fixed("("));
      expr(rng, h, 1);
      h.push_back(fixed(")"));
      h.push_back(fixed(";"));
      break;
    case 3:
      h.push_back(fixed("return"));
      expr(rng, h, 0);
      h.push_back(fixed(";"));
      break;
    case 4:
      h.push_back(ident(rng));
      h.push_back(fixed("++"));
      h.push_back(fixed(";"));
      break;
    case 5:
    case 6:
      s.block = true;
      h.push_back(fixed(choice == 5 ? "if" : "while"));
      h.push_back(fixed("("));
      expr(rng, h, 0);
      h.push_back(fixed(")"));
      s.body = body(rng, depth);
      if (choice == 5 && chance(rng, 40)) {
        s.has_else = true;
        s.else_body = body(rng, depth);
      }
      break;
    case 7: {
      s.block = true;
      const GenToken var = ident(rng);
      for (auto t : {fixed("for"), fixed("("), fixed("int"), var, fixed("="),
                     GenToken{GenToken::kNumber, "0"}, fixed(";"), var, fixed("<"), ident(rng), fixed(";"), var,
                     fixed("++"), fixed(")")}) {
        h.push_back(t);
      }
      s.body = body(rng, depth);
      break;
    }
    default:
      for (auto t : {fixed("throw"), fixed("new"), GenToken{GenToken::kIdent, "Exception"}, fixed("(")}) {
        h.push_back(t);
      }
      h.push_back({GenToken::kString, kStrings[pick(rng, 6)]});
      h.push_back(fixed(")"));
      h.push_back(fixed(";"));
      break;
  }
  return s;
}

bool tight_ok(const std::string& a, const std::string& b, GenToken::Kind ka, GenToken::Kind kb) {
  static const std::string punct = "()[];,.";
  auto is_punct = [](const std::string& t) { return t.size() == 1 && punct.find(t[0]) != std::string::npos; };
  if (ka == GenToken::kNumber && b == ".") return false;
  if (a == "." && kb == GenToken::kNumber) return false;
  return is_punct(a) || is_punct(b);
}

class Renderer {
 public:
  Renderer(const Style& style, Rng& rng) : style_(style), rng_(rng) {}

  std::string run(const Program& p) {
    if (style_.vary_layout) out_ += indent(0);
    for (std::size_t i = 0; i < p.statements.size(); ++i) {
      if (i > 0) separator(0);
      stmt(p.statements[i], 0);
    }
    if (style_.add_comments && chance(rng_, 30)) out_ += " // tail";
    out_ += "\n";
    return std::move(out_);
  }

 private:
  std::string indent(int depth) {
    if (!style_.vary_layout) return std::string(static_cast<std::size_t>(depth), '\t');
    std::string s;
    const int n = pick(rng_, 2 * depth + 2);
    for (int i = 0; i < n; ++i) s += chance(rng_, 50) ? "\t" : "  ";
    return s;
  }

  std::string comment_text() {
    static const char* const words[] = {"note", "fix me", "x = y;", "{ unbalanced", "\"quoted\""};
    return words[pick(rng_, 5)];
  }

  void newline(int depth) {
    if (style_.add_comments && chance(rng_, 20)) out_ += " // " + comment_text();
    out_ += "\n";
    if (style_.add_comments && chance(rng_, 10)) out_ += indent(depth) + "// " + comment_text() + "\n";
    out_ += indent(depth);
  }

  void separator(int depth) {
    if (style_.vary_layout && chance(rng_, 25)) {
      out_ += chance(rng_, 50) ? " " : "\t";
    } else {
      newline(depth);
    }
  }

  void gap(const GenToken& a, const GenToken& b) {
    if (style_.add_comments && chance(rng_, 8)) {
      out_ += " /* " + comment_text() + " */ ";
      return;
    }
    if (!style_.vary_layout) {
      out_ += " ";
      return;
    }
    const int c = pick(rng_, 4);
    if (c == 0 && tight_ok(a.text, b.text, a.kind, b.kind)) return;
    out_ += c == 1 ? "  " : c == 2 ? "\t" : " ";
  }

  std::string text(const GenToken& t) {
    switch (t.kind) {
      case GenToken::kIdent:
        if (style_.rename) {
          std::string s = "q";
          const int n = 1 + pick(rng_, 6);
          static const std::string alnum = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_$";
          for (int i = 0; i < n; ++i) s += alnum[static_cast<std::size_t>(pick(rng_, 64))];
          return s;
        }
        return t.text;
      case GenToken::kNumber:
        return style_.change_literals ? kNumbers[pick(rng_, 8)] : t.text;
      case GenToken::kString:
        return style_.change_literals ? kStrings[pick(rng_, 6)] : t.text;
      case GenToken::kChar:
        return style_.change_literals ? kChars[pick(rng_, 4)] : t.text;
      case GenToken::kFixed:
        break;
    }
    return t.text;
  }

  void tokens(const std::vector<GenToken>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i > 0) gap(ts[i - 1], ts[i]);
      out_ += text(ts[i]);
    }
  }

  void open_brace(int depth) {
    if (style_.vary_layout) {
      const int c = pick(rng_, 4);
      if (c == 0) {
        newline(depth);
      } else if (c == 1) {
        out_ += "  ";
      } else if (c == 2) {
        out_ += " ";
      }
    } else {
      out_ += " ";
    }
    out_ += "{";
  }

  void block(const std::vector<GenStatement>& children, int depth) {
    open_brace(depth);
    for (const auto& c : children) {
      separator(depth + 1);
      stmt(c, depth + 1);
    }
    separator(depth);
    out_ += "}";
  }

  void stmt(const GenStatement& s, int depth) {
    tokens(s.head);
    if (!s.block) return;
    block(s.body, depth);
    if (s.has_else) {
      if (style_.vary_layout && chance(rng_, 50)) {
        newline(depth);
      } else {
        out_ += " ";
      }
      out_ += "else";
      block(s.else_body, depth);
    }
  }

  const Style& style_;
  Rng& rng_;
  std::string out_;
};

}  // namespace

double reference_nn_loss(const cloneval::NeuralNetModel& model, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    std::vector<double> a(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index c = 0; c < x.cols(); ++c) a[static_cast<std::size_t>(c)] = x(r, c);
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      const auto& w = model.weights[l];
      std::vector<double> z(static_cast<std::size_t>(w.cols()));
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        double s = model.biases[l](j);
        for (Eigen::Index i = 0; i < w.rows(); ++i) s += a[static_cast<std::size_t>(i)] * w(i, j);
        z[static_cast<std::size_t>(j)] = s;
      }
      if (l + 1 < model.weights.size()) {
        for (auto& v : z) {
          v = model.hidden_activation == cloneval::Activation::kSigmoid ? 1.0 / (1.0 + std::exp(-v))
                                                                         : std::max(0.0, v);
        }
      }
      a = std::move(z);
    }
    const double mx = std::max(a[0], a[1]);
    const double log_sum = mx + std::log(std::exp(a[0] - mx) + std::exp(a[1] - mx));
    total -= y(r, 0) * (a[0] - log_sum) + y(r, 1) * (a[1] - log_sum);
  }
  return total / static_cast<double>(x.rows());
}

double gradient_check(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 1 + pick(rng, 4);
  std::vector<int> sizes{n};
  const int hidden = 1 + pick(rng, 2);
  for (int h = 0; h < hidden; ++h) sizes.push_back(1 + pick(rng, 5));
  sizes.push_back(2);
  const auto act = chance(rng, 50) ? cloneval::Activation::kSigmoid : cloneval::Activation::kRelu;
  auto model = cloneval::NeuralNetModel::random(sizes, act, rng());
  const int m = 1 + pick(rng, 6);
  Eigen::MatrixXd x(m, n), y = Eigen::MatrixXd::Zero(m, 2);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) x(r, c) = u(rng);
    y(r, pick(rng, 2)) = 1.0;
  }
  const auto g = cloneval::loss_and_gradients(model, x, y);
  constexpr double eps = 1e-5;
  double worst = 0.0;
  auto compare = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + eps;
    const double up = reference_nn_loss(model, x, y);
    param = saved - eps;
    const double down = reference_nn_loss(model, x, y);
    param = saved;
    const double numeric = (up - down) / (2 * eps);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  };
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    for (Eigen::Index i = 0; i < model.weights[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < model.weights[l].cols(); ++j) compare(model.weights[l](i, j), g.weights[l](i, j));
    }
    for (Eigen::Index j = 0; j < model.biases[l].size(); ++j) compare(model.biases[l](j), g.biases[l](j));
  }
  if (std::abs(g.loss - reference_nn_loss(model, x, y)) > 1e-12) worst = INFINITY;
  return worst;
}

double reference_silverman(std::vector<double> s) {
  const double m = static_cast<double>(s.size());
  if (s.size() < 2) return 1e-6;
  double mean = 0.0;
  for (const double v : s) mean += v / m;
  double var = 0.0;
  for (const double v : s) var += (v - mean) * (v - mean) / (m - 1.0);
  std::sort(s.begin(), s.end());
  auto q = [&](double p) {
    const double h = (m - 1.0) * p;
    const double f = std::floor(h);
    const auto i = static_cast<std::size_t>(f);
    return i + 1 < s.size() ? s[i] + (h - f) * (s[i + 1] - s[i]) : s[i];
  };
  const double iqr = q(0.75) - q(0.25);
  const double sd = std::sqrt(var);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return std::max(0.9 * spread / std::pow(m, 0.2), 1e-6);
}

long double reference_bayes_posterior(const cloneval::TrainingSet& ts, const cloneval::FeatureVector& x) {
  long double score[2] = {0, 0};
  const cloneval::Label labels[2] = {cloneval::Label::kTruePositive, cloneval::Label::kFalsePositive};
  for (int k = 0; k < 2; ++k) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts.y[i] == labels[k]) rows.push_back(i);
    }
    long double s = static_cast<long double>(rows.size()) / static_cast<long double>(ts.size());
    for (std::size_t f = 0; f < x.size(); ++f) {
      std::vector<double> samples;
      for (const auto i : rows) samples.push_back(ts.x[i][f]);
      const long double h = reference_silverman(samples);
      long double sum = 0;
      for (const double v : samples) {
        const long double t = (static_cast<long double>(x[f]) - v) / h;
        sum += std::exp(-t * t / 2) / std::sqrt(2 * std::numbers::pi_v<long double>);
      }
      s *= sum / (static_cast<long double>(samples.size()) * h);
    }
    score[k] = s;
  }
  return score[0] / (score[0] + score[1]);
}

double mann_whitney_auc(const std::vector<double>& scores, const std::vector<bool>& positive) {
  double concordant = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        concordant += 1.0;
      } else if (scores[i] == scores[j]) {
        concordant += 0.5;
      }
    }
  }
  return concordant / pairs;
}

Program random_program(std::mt19937_64& rng, int statements) {
  Program p;
  for (int i = 0; i < statements; ++i) p.statements.push_back(statement(rng, 0));
  return p;
}

std::string render(const Program& program, const Style& style, std::mt19937_64& rng) {
  return Renderer(style, rng).run(program);
}

cloneval::ClonePair make_pair(const std::string& a, const std::string& b, std::string id) {
  cloneval::ClonePair p;
  p.id = std::move(id);
  p.fragment1 = cloneval::CodeFragment::from_text(a);
  p.fragment2 = cloneval::CodeFragment::from_text(b);
  return p;
}

}  // namespace testsupport
