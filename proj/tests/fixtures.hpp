#pragma once

// Shared fixtures and independent oracles for the unit and acceptance
// suites. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cosim/dataset.hpp"

namespace cosim::testing {

inline PairRecord make_record(std::string id, std::string word1, std::string word2, std::string context1,
                              std::string context2, std::string w1c1, std::string w2c1, std::string w1c2,
                              std::string w2c2, Language lang = Language::en) {
  PairRecord r;
  r.id = std::move(id);
  r.language = lang;
  r.word1 = std::move(word1);
  r.word2 = std::move(word2);
  r.context1 = std::move(context1);
  r.context2 = std::move(context2);
  r.word1_context1 = std::move(w1c1);
  r.word2_context1 = std::move(w2c1);
  r.word1_context2 = std::move(w1c2);
  r.word2_context2 = std::move(w2c2);
  return r;
}

// ---------------------------------------------------------------------------
// Planted two-record fixture with 2-dimensional token vectors.
//
// Record 0: "alpha beta" / "beta and alpha"
//   context1: alpha=[1,0] beta=[0,1]
//   context2: beta=[1,0] and=[5,5] alpha=[1,1]
// Record 1: "cats chase dogs" / "Cats sleep, dogs bark" (subwords + case fallback)
//   context1: cat=[0,0] ##s=[2,4] chase=[9,9] dog=[3,1] ##s=[1,1]
//             -> cats=[1,2], dogs=[2,1]
//   context2: Cats=[3,4] sleep,=[0,1] dogs=[4,3] bark=[1,0]

inline const char* kGoldenPairs =
    "word1\tword2\tcontext1\tcontext2\tword1_context1\tword2_context1\tword1_context2\tword2_context2\n"
    "alpha\tbeta\talpha beta\tbeta and alpha\talpha\tbeta\talpha\tbeta\n"
    "cat\tdog\tcats chase dogs\tCats sleep, dogs bark\tcats\tdogs\tcats\tdogs\n";

inline const char* kGoldenEmbeddings =
    R"({"dimension":2,"format":"ctxemb/1","provenance":"planted"})"
    "\n"
    R"({"context":1,"pair_id":"0","text":"alpha beta","tokens":[{"e":5,"s":0,"t":"alpha","v":[1.0,0.0]},{"e":10,"s":6,"t":"beta","v":[0.0,1.0]}]})"
    "\n"
    R"({"context":2,"pair_id":"0","text":"beta and alpha","tokens":[{"e":4,"s":0,"t":"beta","v":[1.0,0.0]},{"e":8,"s":5,"t":"and","v":[5.0,5.0]},{"e":14,"s":9,"t":"alpha","v":[1.0,1.0]}]})"
    "\n"
    R"({"context":1,"pair_id":"1","text":"cats chase dogs","tokens":[{"e":3,"s":0,"t":"cat","v":[0.0,0.0]},{"e":4,"s":3,"t":"##s","v":[2.0,4.0]},{"e":10,"s":5,"t":"chase","v":[9.0,9.0]},{"e":14,"s":11,"t":"dog","v":[3.0,1.0]},{"e":15,"s":14,"t":"##s","v":[1.0,1.0]}]})"
    "\n"
    R"({"context":2,"pair_id":"1","text":"Cats sleep, dogs bark","tokens":[{"e":4,"s":0,"t":"Cats","v":[3.0,4.0]},{"e":11,"s":5,"t":"sleep,","v":[0.0,1.0]},{"e":16,"s":12,"t":"dogs","v":[4.0,3.0]},{"e":21,"s":17,"t":"bark","v":[1.0,0.0]}]})"
    "\n";

/// Hand-derived expectations for the planted fixture, per record:
/// {sc1_euclidean, sc1_cosine, sc2_euclidean, sc2_cosine}.
struct GoldenRow {
  const char* id;
  double sc1_euclidean, sc1_cosine, sc2_euclidean, sc2_cosine;
};

inline std::vector<GoldenRow> golden_rows() {
  const double r2 = std::sqrt(2.0);
  return {
      // [1,0] vs [0,1]: cos 0, dist √2.   [1,1] vs [1,0]: cos 1/√2, dist 1.
      {"0", -r2, 0.0, -1.0, 1.0 / r2},
      // [1,2] vs [2,1]: cos 4/5, dist √2. [3,4] vs [4,3]: cos 24/25, dist √2.
      {"1", -r2, 4.0 / 5.0, -r2, 24.0 / 25.0},
  };
}

// ---------------------------------------------------------------------------
// Naive oracles, written independently of src/.

inline double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(dot / std::sqrt(na * nb));
}

inline double oracle_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double d = static_cast<long double>(a[i]) - b[i];
    s += d * d;
  }
  return static_cast<double>(std::sqrt(s));
}

/// Single-pass textbook Pearson in extended precision:
/// (nΣxy − ΣxΣy) / √((nΣx² − (Σx)²)(nΣy² − (Σy)²)).
inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

inline double oracle_uncentered(const std::vector<double>& x, const std::vector<double>& y) {
  return oracle_cosine(x, y);
}

/// Spearman for tie-free data: 1 − 6Σd² / (m(m² − 1)), ranks by counting.
inline double oracle_spearman_no_ties(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  auto ranks = [&](const std::vector<double>& v) {
    std::vector<std::size_t> order = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<long double> r(m);
    for (std::size_t k = 0; k < m; ++k) r[order[k]] = static_cast<long double>(k + 1);
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  long double d2 = 0;
  for (std::size_t i = 0; i < m; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const long double mm = static_cast<long double>(m);
  return static_cast<double>(1.0L - 6.0L * d2 / (mm * (mm * mm - 1.0L)));
}

/// Mid-ranks by brute-force counting: rank = (#less) + (#equal + 1) / 2.
inline std::vector<double> oracle_mid_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) ++less;
      if (w == v[i]) ++equal;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(dim);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// Relative error; absolute when the reference is exactly zero.
inline double rel_err(double got, double want) {
  const double denom = want == 0.0 ? 1.0 : std::abs(want);
  return std::abs(got - want) / denom;
}

/// Records with generated contexts; every surface form occurs in its context.
inline std::vector<PairRecord> synthetic_records(std::size_t n, std::uint64_t seed = 11,
                                                 Language lang = Language::en) {
  static const std::vector<std::string> words = {
      "bank", "river", "money", "shore", "stream", "loan", "water", "coin", "boat", "field",
      "tree", "stone", "house", "road", "cloud", "light", "glass", "lamp", "horse", "song"};
  static const std::vector<std::string> fillers = {"the", "a", "of", "quietly", "under",
                                                    "over", "with", "small", "green", "old"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::vector<PairRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (b == a) b = (a + 1) % words.size();
    const std::string& w1 = words[a];
    const std::string& w2 = words[b];
    auto sentence = [&] {
      std::string s;
      const std::size_t len = 2 + pick(rng) % 5;
      for (std::size_t k = 0; k < len; ++k) s += fillers[pick(rng) % fillers.size()] + " ";
      return s;
    };
    const std::string c1 = sentence() + w1 + " near the " + w2 + " " + sentence();
    const std::string c2 = "The " + w2 + " " + sentence() + "and " + w1 + " " + sentence();
    out.push_back(make_record(std::to_string(i), w1, w2, c1, c2, w1, w2, w1, w2, lang));
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cosim-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& contents = {}) const {
    const auto p = path_ / name;
    if (!contents.empty()) {
      std::ofstream(p, std::ios::binary) << contents;
    }
    return p.string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cosim::testing
