#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "knotfloer/branched.hpp"
#include "knotfloer/cache.hpp"
#include "knotfloer/char_variety.hpp"
#include "knotfloer/s_complex.hpp"
#include "knotfloer/seifert.hpp"

namespace knotfloer {

struct VerifyInstance {
  std::string params;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyInstance> instances;

  size_t failures() const {
    size_t n = 0;
    for (auto& i : instances)
      if (!i.pass) ++n;
    return n;
  }
  bool all_pass() const { return failures() == 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["instances"] = nlohmann::json::array();
    for (auto& i : instances)
      j["instances"].push_back({{"params", i.params},
                                {"expected", i.expected},
                                {"got", i.got},
                                {"pass", i.pass}});
    j["summary"] = {{"total", instances.size()}, {"failed", failures()}};
    return j;
  }
  std::string summary_line() const {
    std::ostringstream os;
    os << suite << ": " << (instances.size() - failures()) << "/"
       << instances.size() << " pass";
    return os.str();
  }
};

// Shared memo for the expensive invariants, with optional disk-backed records.
class InvariantMemo {
 public:
  explicit InvariantMemo(const ResultCache* disk = nullptr) : disk_(disk) {}

  long signature(long p, long q, const Rational& alpha) {
    std::string key = torus_key(p, q, alpha);
    {
      std::lock_guard<std::mutex> lock(mtx_);
      auto it = sig_.find(key);
      if (it != sig_.end()) return it->second;
    }
    if (disk_) {
      if (auto rec = disk_->get("signature", key)) {
        long v = rec->value.get<long>();
        std::lock_guard<std::mutex> lock(mtx_);
        sig_[key] = v;
        return v;
      }
    }
    long v = tl_signature(seifert(p, q), alpha);
    {
      std::lock_guard<std::mutex> lock(mtx_);
      sig_[key] = v;
    }
    if (disk_) disk_->put_value("signature", key, v);
    return v;
  }

  long count(long p, long q, const Rational& alpha) {
    std::string key = torus_key(p, q, alpha);
    {
      std::lock_guard<std::mutex> lock(mtx_);
      auto it = count_.find(key);
      if (it != count_.end()) return it->second;
    }
    if (disk_) {
      if (auto rec = disk_->get("count", key)) {
        long v = rec->value.get<long>();
        std::lock_guard<std::mutex> lock(mtx_);
        count_[key] = v;
        return v;
      }
    }
    long v = count_reps(p, q, alpha);
    {
      std::lock_guard<std::mutex> lock(mtx_);
      count_[key] = v;
    }
    if (disk_) disk_->put_value("count", key, v);
    return v;
  }

  bool admissible_torus(long p, long q, const Rational& alpha) {
    return admissible(seifert(p, q), alpha);
  }

  const SeifertMatrix& seifert(long p, long q) {
    std::lock_guard<std::mutex> lock(seifert_mtx_);
    auto it = seifert_.find({p, q});
    if (it == seifert_.end())
      it = seifert_.emplace(std::make_pair(p, q), torus_knot_seifert(p, q)).first;
    return it->second;
  }

 private:
  static std::string torus_key(long p, long q, const Rational& alpha) {
    return "T(" + std::to_string(p) + "," + std::to_string(q) +
           ");alpha=" + to_string(alpha);
  }

  const ResultCache* disk_;
  std::mutex mtx_, seifert_mtx_;
  std::map<std::string, long> sig_, count_;
  std::map<std::pair<long, long>, SeifertMatrix> seifert_;
};

namespace verify_detail {

inline void parallel_for(size_t n, unsigned jobs,
                         const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  unsigned workers = std::min<size_t>(jobs, n);
  std::exception_ptr error;
  std::mutex err_mtx;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mtx);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline std::vector<std::pair<long, long>> coprime_pairs(long max_pq) {
  std::vector<std::pair<long, long>> out;
  for (long p = 2; p * (p + 1) <= max_pq; ++p)
    for (long q = p + 1; p * q <= max_pq; ++q)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  return out;
}

// admissible alpha = l/2r values for one torus knot, deduplicated
inline std::vector<Rational> alpha_grid(InvariantMemo& memo, long p, long q,
                                        long max_r) {
  std::set<Rational> seen;
  std::vector<Rational> out;
  for (long r = 2; r <= max_r; ++r)
    for (long l = 1; l <= r - 1; ++l) {
      Rational a = make_q(l, 2 * r);
      if (!seen.insert(a).second) continue;
      if (memo.admissible_torus(p, q, a)) out.push_back(a);
    }
  return out;
}

}  // namespace verify_detail

// Theorem-level identity: |R*_alpha| = -sigma_alpha/2 over the full desk-scale
// grid of torus knots and rational holonomy parameters.
inline VerifyReport verify_absolute_counting(long max_pq = 35, long max_r = 12,
                                             unsigned jobs = 1,
                                             InvariantMemo* shared = nullptr) {
  InvariantMemo local;
  InvariantMemo& memo = shared ? *shared : local;
  VerifyReport rep{"absolute-counting", {}};
  struct Task {
    long p, q;
    Rational alpha;
  };
  std::vector<Task> tasks;
  for (auto [p, q] : verify_detail::coprime_pairs(max_pq))
    for (auto& a : verify_detail::alpha_grid(memo, p, q, max_r))
      tasks.push_back({p, q, a});
  rep.instances.resize(tasks.size());
  verify_detail::parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto& t = tasks[i];
    long sigma = memo.signature(t.p, t.q, t.alpha);
    long cnt = memo.count(t.p, t.q, t.alpha);
    VerifyInstance inst;
    inst.params = "p=" + std::to_string(t.p) + ",q=" + std::to_string(t.q) +
                  ",alpha=" + to_string(t.alpha);
    inst.expected = std::to_string(-sigma / 2);
    inst.got = std::to_string(cnt);
    inst.pass = (2 * cnt == -sigma);
    rep.instances[i] = inst;
  });
  return rep;
}

// Flip symmetry on the same grid: equal counts and equal signatures at alpha
// and 1/2 - alpha.
inline VerifyReport verify_flip(long max_pq = 35, long max_r = 12,
                                unsigned jobs = 1,
                                InvariantMemo* shared = nullptr) {
  InvariantMemo local;
  InvariantMemo& memo = shared ? *shared : local;
  VerifyReport rep{"flip", {}};
  struct Task {
    long p, q;
    Rational alpha;
  };
  std::vector<Task> tasks;
  for (auto [p, q] : verify_detail::coprime_pairs(max_pq))
    for (auto& a : verify_detail::alpha_grid(memo, p, q, max_r))
      if (a <= Rational(1, 4)) tasks.push_back({p, q, a});
  rep.instances.resize(tasks.size());
  verify_detail::parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto& t = tasks[i];
    Rational mirror = Rational(1, 2) - t.alpha;
    long c1 = memo.count(t.p, t.q, t.alpha);
    long c2 = memo.count(t.p, t.q, mirror);
    long s1 = memo.signature(t.p, t.q, t.alpha);
    long s2 = memo.signature(t.p, t.q, mirror);
    VerifyInstance inst;
    inst.params = "p=" + std::to_string(t.p) + ",q=" + std::to_string(t.q) +
                  ",alpha=" + to_string(t.alpha);
    inst.expected = "count " + std::to_string(c1) + ", sigma " + std::to_string(s1);
    inst.got = "count " + std::to_string(c2) + ", sigma " + std::to_string(s2);
    inst.pass = (c1 == c2 && s1 == s2);
    rep.instances[i] = inst;
  });
  return rep;
}

// Lattice-point cross-check for T(2, 2k+1).
inline VerifyReport verify_litherland(long max_k = 10, long grid = 50,
                                      unsigned jobs = 1,
                                      InvariantMemo* shared = nullptr) {
  InvariantMemo local;
  InvariantMemo& memo = shared ? *shared : local;
  VerifyReport rep{"litherland", {}};
  struct Task {
    long k;
    Rational alpha;
  };
  std::vector<Task> tasks;
  for (long k = 1; k <= max_k; ++k) {
    long found = 0;
    for (long den = 3; den <= 40 && found < grid; ++den)
      for (long num = 1; 2 * num < den && found < grid; ++num) {
        if (std::gcd(num, den) != 1) continue;
        Rational a = make_q(num, den);
        if (!memo.admissible_torus(2, 2 * k + 1, a)) continue;
        tasks.push_back({k, a});
        ++found;
      }
  }
  rep.instances.resize(tasks.size());
  verify_detail::parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto& t = tasks[i];
    long sig = memo.signature(2, 2 * t.k + 1, t.alpha);
    long lith = litherland_t2(t.k, t.alpha);
    VerifyInstance inst;
    inst.params = "k=" + std::to_string(t.k) + ",alpha=" + to_string(t.alpha);
    inst.expected = std::to_string(lith);
    inst.got = std::to_string(sig);
    inst.pass = (sig == lith);
    rep.instances[i] = inst;
  });
  return rep;
}

// Alexander polynomials of torus knots against the closed form
// (t^{pq}-1)(t-1)/((t^p-1)(t^q-1)), normalized.
inline LaurentQ torus_alexander_closed_form(long p, long q) {
  QPoly num = xn_minus_1(p * q) * xn_minus_1(1);
  QPoly den = xn_minus_1(p) * xn_minus_1(q);
  auto [quot, rem] = divrem(num, den);
  if (!rem.is_zero())
    throw std::logic_error("torus Alexander closed form not polynomial");
  long d = quot.degree();
  LaurentQ out;
  for (long e = 0; e <= d; ++e)
    if (quot.coeff(e) != 0) out.set(e - d / 2, quot.coeff(e));
  if (out.eval_one() == -1) {
    LaurentQ neg;
    for (auto& [e, v] : out.t) neg.set(e, -v);
    out = neg;
  }
  return out;
}

inline VerifyReport verify_alexander(long max_pq = 35, unsigned jobs = 1) {
  VerifyReport rep{"alexander", {}};
  auto pairs = verify_detail::coprime_pairs(max_pq);
  rep.instances.resize(pairs.size());
  verify_detail::parallel_for(pairs.size(), jobs, [&](size_t i) {
    auto [p, q] = pairs[i];
    LaurentQ got = alexander(torus_knot_seifert(p, q));
    LaurentQ want = torus_alexander_closed_form(p, q);
    VerifyInstance inst;
    inst.params = "p=" + std::to_string(p) + ",q=" + std::to_string(q);
    inst.expected = to_string(want);
    inst.got = to_string(got);
    inst.pass = (got == want);
    rep.instances[i] = inst;
  });
  return rep;
}

// Lemma-level Brieskorn identity over all pairwise-coprime triples.
inline VerifyReport verify_p2(long max_pqr = 200, unsigned jobs = 1,
                              InvariantMemo* shared = nullptr) {
  InvariantMemo local;
  InvariantMemo& memo = shared ? *shared : local;
  VerifyReport rep{"p2", {}};
  struct Task {
    long p, q, r;
  };
  std::vector<Task> tasks;
  for (long p = 2; p <= max_pqr; ++p)
    for (long q = p + 1; p * q <= max_pqr; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (long r = 1; p * q * r <= max_pqr; ++r) {
        if (std::gcd(p, r) != 1 || std::gcd(q, r) != 1) continue;
        tasks.push_back({p, q, r});
      }
    }
  rep.instances.resize(tasks.size());
  verify_detail::parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto& t = tasks[i];
    long lhs = 2 * brieskorn_count(t.p, t.q, t.r);
    long rhs = 0;
    for (long l = 1; l <= t.r - 1; ++l)
      rhs += memo.count(t.p, t.q, make_q(l, 2 * t.r));
    VerifyInstance inst;
    inst.params = "p=" + std::to_string(t.p) + ",q=" + std::to_string(t.q) +
                  ",r=" + std::to_string(t.r);
    inst.expected = "2|R*(Sigma)| = " + std::to_string(lhs);
    inst.got = "sum counts = " + std::to_string(rhs);
    inst.pass = (lhs == rhs);
    rep.instances[i] = inst;
  });
  return rep;
}

namespace verify_detail {

inline SComplex word_complex(const std::string& word) {
  SComplex acc = unit_complex();
  for (char c : word) {
    if (c == 'B') acc = tensor(acc, block_B());
    else if (c == 'D') acc = tensor(acc, block_B_dual());
    else if (c == 'U') acc = tensor(acc, unit_complex());
    else throw std::invalid_argument("bad word letter");
  }
  return acc;
}

}  // namespace verify_detail

// Froyshov values on tensor powers and additivity on random words.
inline VerifyReport verify_froyshov(long max_l = 6, long n_random = 50,
                                    unsigned seed = 20240901, unsigned jobs = 1) {
  VerifyReport rep{"froyshov", {}};
  struct Task {
    std::string word;
    long expected;
  };
  std::vector<Task> tasks;
  {
    std::string w;
    for (long l = 1; l <= max_l; ++l) {
      w += 'B';
      tasks.push_back({w, l});
    }
  }
  std::mt19937 rng(seed);
  for (long i = 0; i < n_random; ++i) {
    std::uniform_int_distribution<int> len_dist(2, 5);
    int len = len_dist(rng);
    std::string w;
    long h = 0;
    for (int j = 0; j < len; ++j) {
      if (std::uniform_int_distribution<int>(0, 1)(rng)) {
        w += 'B';
        ++h;
      } else {
        w += 'D';
        --h;
      }
    }
    tasks.push_back({w, h});
  }
  rep.instances.resize(tasks.size());
  verify_detail::parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto& t = tasks[i];
    long got = froyshov(verify_detail::word_complex(t.word));
    VerifyInstance inst;
    inst.params = "word=" + t.word;
    inst.expected = std::to_string(t.expected);
    inst.got = std::to_string(got);
    inst.pass = (got == t.expected);
    rep.instances[i] = inst;
  });
  return rep;
}

// Graded ranks of B^l per the structure theorem.
inline VerifyReport verify_ranks(long max_l = 6, unsigned jobs = 1) {
  VerifyReport rep{"ranks", {}};
  rep.instances.resize(max_l);
  verify_detail::parallel_for(max_l, jobs, [&](size_t i) {
    long l = static_cast<long>(i) + 1;
    SComplex c = verify_detail::word_complex(std::string(l, 'B'));
    auto h = homology_ranks(c);
    long h1 = h.count(1) ? h[1] : 0;
    long h3 = h.count(3) ? h[3] : 0;
    bool others = h.count(0) || h.count(2);
    VerifyInstance inst;
    inst.params = "l=" + std::to_string(l);
    inst.expected = "H1=" + std::to_string((l + 1) / 2) +
                    ",H3=" + std::to_string(l / 2) + ",even=0";
    inst.got = "H1=" + std::to_string(h1) + ",H3=" + std::to_string(h3) +
               ",even=" + std::to_string(others ? 1 : 0);
    inst.pass = (h1 == (l + 1) / 2 && h3 == l / 2 && !others);
    rep.instances[i] = inst;
  });
  return rep;
}

// Euler characteristic chi(B^l) = -l = sigma/2.
inline VerifyReport verify_euler(long max_l = 6, unsigned jobs = 1) {
  VerifyReport rep{"euler", {}};
  rep.instances.resize(max_l);
  verify_detail::parallel_for(max_l, jobs, [&](size_t i) {
    long l = static_cast<long>(i) + 1;
    long chi = euler_char(verify_detail::word_complex(std::string(l, 'B')));
    VerifyInstance inst;
    inst.params = "l=" + std::to_string(l);
    inst.expected = std::to_string(-l);
    inst.got = std::to_string(chi);
    inst.pass = (chi == -l);
    rep.instances[i] = inst;
  });
  return rep;
}

// Axioms hold on every tensor word over {B, B-dual, unit} up to a length.
inline VerifyReport verify_tensor_axioms(long max_len = 4, unsigned jobs = 1) {
  VerifyReport rep{"tensor-axioms", {}};
  std::vector<std::string> words{""};
  std::vector<std::string> all;
  for (long len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (auto& w : words)
      for (char c : {'B', 'D', 'U'}) next.push_back(w + c);
    words = next;
    for (auto& w : words) all.push_back(w);
  }
  rep.instances.resize(all.size());
  verify_detail::parallel_for(all.size(), jobs, [&](size_t i) {
    auto repv = validate(verify_detail::word_complex(all[i]));
    VerifyInstance inst;
    inst.params = "word=" + all[i];
    inst.expected = "valid";
    inst.got = repv.ok() ? "valid" : repv.violations.front();
    inst.pass = repv.ok();
    rep.instances[i] = inst;
  });
  return rep;
}

}  // namespace knotfloer
