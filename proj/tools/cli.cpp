#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mobius/arith_table.hpp"
#include "mobius/bounds.hpp"
#include "mobius/delta_sign.hpp"
#include "mobius/error.hpp"
#include "mobius/format.hpp"
#include "mobius/harmonic.hpp"
#include "mobius/identity.hpp"
#include "mobius/modulus.hpp"
#include "mobius/sums.hpp"

namespace mobius::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s) {
    const char* b = s.c_str();
    char* e = nullptr;
    const double x = std::strtod(b, &e);
    if (s.empty() || e != b + s.size() || !std::isfinite(x)) throw UsageError("not a real number: '" + s + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& s) {
    const double x = parse_real(s);
    if (!(x >= 0.0) || x != std::floor(x) || x > 9.0e15) throw UsageError("not a nonnegative integer: '" + s + "'");
    return static_cast<std::uint64_t>(x);
}

cplx parse_complex(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i') return {parse_real(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not leading and not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (cut == std::string::npos) return {0.0, imag(body)};
    return {parse_real(body.substr(0, cut)), imag(body.substr(cut))};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "a,b,c" or "lo..hi" or "lo..hi:step".
struct Grid {
    std::vector<double> values;
    bool is_range = false;
    double lo = 0.0, hi = 0.0;
};

Grid parse_grid(const std::string& spec, const char* what) {
    Grid g;
    if (spec.empty()) throw UsageError(std::string("empty grid for ") + what);
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        g.is_range = true;
        g.lo = parse_real(spec.substr(0, dots));
        std::string rest = spec.substr(dots + 2);
        double step = 1.0;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = parse_real(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        g.hi = parse_real(rest);
        if (!(step > 0.0) || g.hi < g.lo) throw UsageError(std::string("bad range for ") + what + ": " + spec);
        const auto n = static_cast<std::uint64_t>(std::floor((g.hi - g.lo) / step + 1e-9));
        if (n > 50'000'000) throw UsageError(std::string("range too long for ") + what);
        for (std::uint64_t i = 0; i <= n; ++i) g.values.push_back(g.lo + double(i) * step);
    } else {
        for (const auto& t : split(spec, ',')) g.values.push_back(parse_real(t));
        std::sort(g.values.begin(), g.values.end());
        g.values.erase(std::unique(g.values.begin(), g.values.end()), g.values.end());
        g.lo = g.values.front();
        g.hi = g.values.back();
    }
    return g;
}

// "1,2,6" or "sqfree-divisors:30030".
std::vector<std::uint64_t> parse_q_list(const std::string& spec) {
    std::vector<std::uint64_t> out;
    const std::string tag = "sqfree-divisors:";
    if (spec.rfind(tag, 0) == 0) {
        const auto m = Modulus::from_value(parse_uint(spec.substr(tag.size())));
        out = squarefree_divisors(m.primes());
    } else {
        for (const auto& t : split(spec, ',')) {
            const auto q = parse_uint(t);
            if (q == 0) throw UsageError("q must be positive");
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<cplx> parse_s_list(const std::string& spec) {
    std::vector<cplx> out;
    for (const auto& t : split(spec, ',')) out.push_back(parse_complex(t));
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

std::vector<int> parse_k_list(const std::string& spec) {
    std::vector<int> out;
    for (const auto& t : split(spec, ',')) {
        const auto k = parse_uint(t);
        if (k < 1 || k > 64) throw UsageError("k must lie in 1..64");
        out.push_back(int(k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Runs fn(i) for i < n on `threads` workers; results come back in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::uint64_t needed_limit(double X) { return std::max<std::uint64_t>(1, floor_cut(X)); }

ArithmeticTable load_table(std::uint64_t limit, std::ostream& err) {
    auto table = ArithmeticTable::build(limit);
    if (const char* dir = std::getenv("MOBIUS_CACHE_DIR"); dir && *dir) {
        const auto path = std::filesystem::path(dir) / ("mu_" + std::to_string(limit) + ".bin");
        if (std::filesystem::exists(path)) {
            const auto cache = read_mu_cache(path);
            const auto mu = table.mu_values();
            if (cache.limit != limit || !std::equal(mu.begin(), mu.end(), cache.mu.begin(), cache.mu.end()))
                throw Error("mu cache " + path.string() + " disagrees with the sieve");
        } else {
            std::filesystem::create_directories(path.parent_path());
            write_mu_cache(table, path);
            err << "wrote " << path.string() << "\n";
        }
    }
    return table;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Output {
    std::string format = "csv";
    std::string path;
    bool no_timestamp = false;
};

class Sink {
public:
    Sink(const Output& o, std::ostream& fallback) : opt_(o) {
        if (!o.path.empty()) {
            file_.open(o.path, std::ios::binary);
            if (!file_) throw UsageError("cannot write " + o.path);
            os_ = &file_;
        } else {
            os_ = &fallback;
        }
    }
    std::ostream& os() { return *os_; }
    bool csv() const { return opt_.format == "csv"; }

    void header(const std::string& command, const std::vector<std::string>& columns) {
        if (!opt_.no_timestamp) {
            if (csv())
                os() << "# mobius " << command << " " << timestamp() << "\n";
            else
                os() << nlohmann::json{{"generated", timestamp()}, {"command", command}}.dump() << "\n";
        }
        if (csv()) {
            for (std::size_t i = 0; i < columns.size(); ++i) os() << (i ? "," : "") << columns[i];
            os() << "\n";
        }
    }

private:
    Output opt_;
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

const std::vector<std::string> kReportColumns = {"theorem_id", "X", "q", "param", "lhs", "bound", "margin", "verdict"};

int write_reports(Sink& sink, const std::string& command, const std::vector<BoundReport>& rows) {
    sink.header(command, kReportColumns);
    bool fail = false, inconclusive = false;
    for (const auto& r : rows) {
        if (r.verdict == Verdict::fail) fail = true;
        if (r.verdict == Verdict::inconclusive) inconclusive = true;
        const std::string verdict(to_string(r.verdict));
        if (sink.csv()) {
            sink.os() << csv_field(r.theorem_id) << "," << format_real(r.X) << "," << r.q << "," << csv_field(r.param)
                      << "," << format_real(r.lhs) << "," << format_real(r.bound) << "," << format_real(r.margin)
                      << "," << verdict << "\n";
        } else {
            nlohmann::ordered_json j;
            j["theorem_id"] = r.theorem_id;
            j["X"] = format_real(r.X);
            j["q"] = r.q;
            j["param"] = r.param;
            j["lhs"] = format_real(r.lhs);
            j["bound"] = format_real(r.bound);
            j["margin"] = format_real(r.margin);
            j["error"] = format_real(r.error);
            j["verdict"] = verdict;
            sink.os() << j.dump() << "\n";
        }
    }
    return fail ? kFail : inconclusive ? kInconclusive : kOk;
}

void write_table(Sink& sink, const std::string& command, const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows) {
    sink.header(command, columns);
    for (const auto& r : rows) {
        if (sink.csv()) {
            for (std::size_t i = 0; i < r.size(); ++i) sink.os() << (i ? "," : "") << csv_field(r[i]);
            sink.os() << "\n";
        } else {
            nlohmann::ordered_json j;
            for (std::size_t i = 0; i < r.size(); ++i) j[columns[i]] = r[i];
            sink.os() << j.dump() << "\n";
        }
    }
}

void add_output_options(CLI::App* sub, Output& o) {
    sub->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--out", o.path, "output file (default stdout)");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp header line");
}

struct VerifyArgs {
    std::string theorem, X, q = "1", k = "1", sigma = "1", eps = "0", s = "1", sigma0, A = "1e12";
    std::string limit;
    bool sweep = false;
    unsigned threads = 1;
};

const std::set<std::string> kSmallM = {"update", "m2_sqrt", "m2_log", "coprimality", "basemq"};
const std::set<std::string> kMqeps = {"mqeps_lower", "mqeps", "mqeps_floor"};

std::vector<BoundReport> keep(std::vector<BoundReport> rows, const std::string& id) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [&](const BoundReport& r) { return r.theorem_id != id; }),
               rows.end());
    return rows;
}

std::vector<BoundReport> run_verify(const VerifyArgs& a, std::ostream& err) {
    const auto& ids = bounds_theorem_ids();
    if (std::find(ids.begin(), ids.end(), a.theorem) == ids.end())
        throw UsageError("unknown theorem '" + a.theorem + "' for verify");
    using Task = std::function<std::vector<BoundReport>(const ArithmeticTable*)>;
    std::vector<Task> tasks;
    std::uint64_t limit = 1;
    const std::string& id = a.theorem;

    if (id == "y0") {
        for (double A : parse_grid(a.A, "A").values) tasks.push_back([A](const ArithmeticTable*) {
            return std::vector<BoundReport>{verify_y0(A)};
        });
    } else {
        if (a.X.empty()) throw UsageError("--X is required for " + id);
        const Grid X = parse_grid(a.X, "X");
        if (!(X.lo >= 1.0)) throw UsageError("X must be at least 1");
        limit = needed_limit(X.hi);
        const auto qs = parse_q_list(a.q);
        if (a.sweep) {
            if (!X.is_range) throw UsageError("--sweep needs --X lo..hi");
            const auto lo = static_cast<std::uint64_t>(X.lo), hi = static_cast<std::uint64_t>(X.hi);
            if (double(lo) != X.lo || double(hi) != X.hi) throw UsageError("--sweep needs integer range ends");
            if (id == "easy") {
                const auto ks = parse_k_list(a.k);
                const auto sig = parse_grid(a.sigma, "sigma").values;
                for (auto q : qs) tasks.push_back([=](const ArithmeticTable* t) {
                    if (lo != 1) throw UsageError("easy --sweep covers 1..X_max");
                    return easy_sweep(*t, Modulus::from_value(q), hi, ks, sig);
                });
            } else if (id == "special") {
                for (double sigma : parse_grid(a.sigma, "sigma").values) tasks.push_back([=](const ArithmeticTable* t) {
                    return std::vector<BoundReport>{special_sweep(*t, sigma, lo, hi)};
                });
            } else if (kSmallM.count(id)) {
                for (auto q : qs) tasks.push_back([=](const ArithmeticTable* t) {
                    return keep(small_m_sweep(*t, Modulus::from_value(q), lo, hi), id);
                });
            } else {
                throw UsageError("--sweep is available for easy, special and the small-m bounds");
            }
        } else {
            const auto sig = parse_grid(a.sigma, "sigma").values;
            const auto eps = parse_grid(a.eps, "eps").values;
            const auto ks = parse_k_list(a.k);
            for (double x : X.values) {
                if (id == "special") {
                    for (double sigma : sig) tasks.push_back([=](const ArithmeticTable* t) {
                        return std::vector<BoundReport>{verify_special(*t, x, sigma)};
                    });
                    continue;
                }
                for (auto q : qs) {
                    const auto m = Modulus::from_value(q);
                    if (id == "easy") {
                        for (int k : ks)
                            for (double sigma : sig) tasks.push_back([=](const ArithmeticTable* t) {
                                return std::vector<BoundReport>{verify_easy(*t, x, m, k, sigma)};
                            });
                    } else if (kMqeps.count(id)) {
                        for (double e : eps) tasks.push_back([=](const ArithmeticTable* t) {
                            return keep(verify_mqeps(*t, x, m, e), id);
                        });
                    } else if (id == "mcheckqeps") {
                        for (double e : eps) tasks.push_back([=](const ArithmeticTable* t) {
                            return std::vector<BoundReport>{verify_mcheckqeps(*t, x, m, e)};
                        });
                    } else if (id == "mqdex" || id == "mcheckqdex") {
                        const auto kind = id == "mqdex" ? DexKind::mqdex : DexKind::mcheckqdex;
                        for (cplx s : parse_s_list(a.s)) {
                            std::vector<double> s0 = a.sigma0.empty() ? std::vector<double>{s.real() / 2.0}
                                                                      : parse_grid(a.sigma0, "sigma0").values;
                            for (double z : s0) tasks.push_back([=](const ArithmeticTable* t) {
                                return std::vector<BoundReport>{
                                    verify_dex(*t, x, m, ComplexParameter::make(s, z), kind)};
                            });
                        }
                    } else if (id == "integral_abs_mq") {
                        tasks.push_back([=](const ArithmeticTable* t) {
                            return std::vector<BoundReport>{verify_integral_abs_mq(*t, x, m)};
                        });
                    } else if (kSmallM.count(id)) {
                        tasks.push_back([=](const ArithmeticTable* t) { return keep(small_m_bounds(*t, x, m), id); });
                    }
                }
            }
        }
    }
    if (!a.limit.empty()) {
        const auto L = parse_uint(a.limit);
        if (L < limit)
            throw CapacityError("requested points need a sieve up to " + std::to_string(limit) + " but --limit is " +
                                std::to_string(L));
        limit = L;
    }
    std::optional<ArithmeticTable> table;
    if (id != "y0") table.emplace(load_table(limit, err));
    const ArithmeticTable* tp = table ? &*table : nullptr;
    auto parts = parallel_map<std::vector<BoundReport>>(tasks.size(), a.threads,
                                                        [&](std::size_t i) { return tasks[i](tp); });
    std::vector<BoundReport> rows;
    for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
    return rows;
}

struct HarmonicArgs {
    std::string check;
    std::string X_max = "100000";
    std::string K = "1000000";
    std::string tolerance = "1e-9";
};

std::vector<BoundReport> run_harmonic(const HarmonicArgs& a, std::ostream& err) {
    const auto& ids = harmonic_theorem_ids();
    if (std::find(ids.begin(), ids.end(), a.check) == ids.end())
        throw UsageError("unknown check '" + a.check + "' for harmonic");
    const auto X_max = parse_uint(a.X_max);
    if (X_max < 1) throw UsageError("--X-max must be at least 1");
    const double tol = parse_real(a.tolerance);
    if (a.check == "neg_alpha") return {verify_neg_alpha(parse_uint(a.K), std::max(tol, 1e-6))};
    if (a.check == "stirling_eps" || a.check == "second_mean_value") {
        std::vector<double> pts;
        for (double t = 1.0; t <= 100.0 && t <= double(X_max); t += 0.5) pts.push_back(t);
        for (double t = 100.0; t <= double(X_max); t *= 1.01) pts.push_back(t);
        pts.push_back(double(X_max));
        return {a.check == "stirling_eps" ? verify_stirling_eps(pts) : verify_second_mean_value(pts)};
    }
    const auto table = load_table(X_max, err);
    if (a.check == "harmonic") return verify_harmonic(table, X_max);
    if (a.check == "hanson") return {verify_hanson(table, X_max)};
    if (a.check == "f_le_g") return {verify_f_le_g(table, X_max)};
    return {verify_integral_identity(table, X_max, tol)};
}

struct DeltaArgs {
    std::string q = "1", X0, budget = "1e-9", eps_max = "1", cap, eps_step = "1e-3", replay;
    bool report = false;
    unsigned threads = 1;
};

int run_delta(const DeltaArgs& a, Sink& sink, std::ostream& err) {
    if (!a.replay.empty()) {
        std::ifstream in(a.replay);
        if (!in) throw UsageError("cannot read " + a.replay);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("certificate: ") + e.what());
        }
        std::vector<DeltaCertificate> certs;
        if (j.is_array())
            for (const auto& c : j) certs.push_back(certificate_from_json(c));
        else
            certs.push_back(certificate_from_json(j));
        std::uint64_t limit = 1;
        for (const auto& c : certs) limit = std::max(limit, needed_limit(c.X0));
        const auto table = load_table(limit, err);
        std::vector<std::vector<std::string>> rows;
        bool ok = true;
        for (const auto& c : certs) {
            const auto r = replay_certificate(table, c);
            ok = ok && r.ok;
            rows.push_back({std::to_string(c.q), format_real(c.X0), to_string(c.status), r.ok ? "valid" : "invalid",
                            std::to_string(r.steps_checked), r.message});
        }
        write_table(sink, "delta-sign --replay", {"q", "X0", "status", "replay", "steps", "message"}, rows);
        return ok ? kOk : kData;
    }
    if (a.X0.empty()) throw UsageError("--X0 is required");
    const double X0 = parse_real(a.X0);
    const auto qs = parse_q_list(a.q);
    const auto table = load_table(needed_limit(X0), err);
    if (!a.cap.empty()) {
        const double cap = parse_real(a.cap), step = parse_real(a.eps_step);
        auto rows = parallel_map<BoundReport>(qs.size(), a.threads, [&](std::size_t i) {
            return cap_scan(table, Modulus::from_value(qs[i]), X0, cap, step);
        });
        return write_reports(sink, "delta-sign", rows);
    }
    const double budget = parse_real(a.budget), eps_max = parse_real(a.eps_max);
    auto certs = parallel_map<DeltaCertificate>(qs.size(), a.threads, [&](std::size_t i) {
        return certify_sign(table, Modulus::from_value(qs[i]), X0, budget, eps_max);
    });
    if (a.report) {
        std::vector<BoundReport> rows;
        for (const auto& c : certs) rows.push_back(certificate_report(c));
        return write_reports(sink, "delta-sign", rows);
    }
    nlohmann::json j;
    if (certs.size() == 1) {
        j = certificate_to_json(certs.front());
    } else {
        j = nlohmann::json::array();
        for (const auto& c : certs) j.push_back(certificate_to_json(c));
    }
    sink.os() << j.dump() << "\n";
    bool fail = false, inconclusive = false;
    for (const auto& c : certs) {
        fail = fail || c.status == CertificateStatus::fail;
        inconclusive = inconclusive || c.status == CertificateStatus::inconclusive;
        if (c.status != CertificateStatus::certified_nonpositive)
            err << "q=" << c.q << ": " << to_string(c.status) << " at N=" << c.fail_N
                << " eps=" << format_real(c.fail_eps) << " value=" << format_real(c.fail_value) << "\n";
    }
    return fail ? kFail : inconclusive ? kInconclusive : kOk;
}

struct SumArgs {
    std::string quantity = "m", X, q = "1", s = "1", k = "1";
    unsigned threads = 1;
};

std::vector<std::vector<std::string>> run_sum(const SumArgs& a, std::ostream& err) {
    static const std::set<std::string> kinds = {"m", "mcheck", "logpow", "psi", "mertens"};
    if (!kinds.count(a.quantity)) throw UsageError("unknown quantity '" + a.quantity + "'");
    if (a.X.empty()) throw UsageError("--X is required");
    const Grid X = parse_grid(a.X, "X");
    if (!(X.lo >= 0.0)) throw UsageError("X must be nonnegative");
    const auto qs = parse_q_list(a.q);
    const auto ss = parse_s_list(a.s);
    const auto ks = parse_k_list(a.k);
    const auto table = load_table(needed_limit(X.hi), err);
    struct Point {
        double X;
        std::uint64_t q;
        cplx s;
        int k;
    };
    std::vector<Point> pts;
    for (double x : X.values) {
        if (a.quantity == "psi" || a.quantity == "mertens") {
            pts.push_back({x, 1, 1.0, 1});
            continue;
        }
        for (auto q : qs)
            for (auto s : ss) {
                if (a.quantity == "logpow")
                    for (int k : ks) pts.push_back({x, q, s, k});
                else
                    pts.push_back({x, q, s, 0});
            }
    }
    return parallel_map<std::vector<std::string>>(pts.size(), a.threads, [&](std::size_t i) {
        const auto& p = pts[i];
        const auto m = Modulus::from_value(p.q);
        std::string param, value, error;
        if (a.quantity == "m" || a.quantity == "mcheck") {
            const auto v = a.quantity == "m" ? m_q_s(table, p.X, m, p.s) : m_check_q_s(table, p.X, m, p.s);
            param = "s=" + format_complex(p.s);
            value = format_complex(v.value);
            error = format_real(v.error);
        } else if (a.quantity == "logpow") {
            if (p.s.imag() != 0.0) throw UsageError("logpow needs real s");
            const auto v = mobius_log_power_sum(table, p.X, m, p.k, p.s.real());
            param = "k=" + std::to_string(p.k) + ";sigma=" + format_real(p.s.real());
            value = format_real(v.value);
            error = format_real(v.error);
        } else if (a.quantity == "psi") {
            const auto v = chebyshev_psi(table, p.X);
            value = format_real(v.value);
            error = format_real(v.error);
        } else {
            value = std::to_string(table.mertens(floor_cut(p.X)));
            error = "0";
        }
        return std::vector<std::string>{a.quantity, format_real(p.X), std::to_string(p.q), param, value, error};
    });
}

struct IdentityArgs {
    std::string name, X, kernel = "one", tolerance = "1e-9";
};

int run_identity(const IdentityArgs& a, Sink& sink, std::ostream& err) {
    static const std::map<std::string, CatalogName> names = {
        {"meissel", CatalogName::meissel},         {"elmarraki", CatalogName::elmarraki},
        {"macleod", CatalogName::macleod},         {"euler_gamma", CatalogName::euler_gamma},
        {"liouville", CatalogName::liouville},     {"daval_general", CatalogName::daval_general}};
    static const std::map<std::string, std::function<Kernel()>> kernels = {
        {"one", [] { return Kernel::one(); }},
        {"two_id", [] { return Kernel::two_id(); }},
        {"inverse_id", [] { return Kernel::inverse_id(); }}};
    if (a.X.empty()) throw UsageError("--X is required");
    const Grid X = parse_grid(a.X, "X");
    if (!(X.lo >= 1.0)) throw UsageError("X must be at least 1");
    const double tol = parse_real(a.tolerance);
    const auto table = load_table(needed_limit(X.hi), err);
    std::vector<std::vector<std::string>> rows;
    bool fail = false;
    auto push = [&](const std::string& name, double x, cplx lhs, cplx rhs, double res, double ofd) {
        const bool ok = ofd <= tol;
        fail = fail || !ok;
        rows.push_back({name, format_real(x), format_complex(lhs), format_complex(rhs), format_real(res),
                        format_real(ofd), ok ? "pass" : "fail"});
    };
    if (a.name == "catalog") {
        for (const auto& spec : ofd_catalog()) {
            const OfdEvaluator ev(table, spec, X.hi);
            for (double x : X.values) {
                const auto r = ev.evaluate(x);
                push(spec.name, x, r.lhs, r.rhs, r.residual, r.residual);
            }
        }
    } else {
        const auto it = names.find(a.name);
        if (it == names.end()) throw UsageError("unknown identity '" + a.name + "'");
        const auto kit = kernels.find(a.kernel);
        if (kit == kernels.end()) throw UsageError("unknown kernel '" + a.kernel + "'");
        for (double x : X.values)
            for (const auto& r : catalog_check(table, it->second, x, kit->second()))
                push(r.name, x, r.lhs, r.rhs, r.residual, r.ofd_residual);
    }
    write_table(sink, "identity", {"name", "X", "lhs", "rhs", "residual", "ofd_residual", "verdict"}, rows);
    return fail ? kFail : kOk;
}

struct SieveArgs {
    std::string limit, out;
};

int run_sieve(const SieveArgs& a, Sink& sink) {
    const auto limit = parse_uint(a.limit);
    const auto table = ArithmeticTable::build(limit);
    std::filesystem::path path = a.out;
    if (path.empty()) {
        const char* dir = std::getenv("MOBIUS_CACHE_DIR");
        if (!dir || !*dir) throw UsageError("sieve needs --cache or MOBIUS_CACHE_DIR");
        path = std::filesystem::path(dir) / ("mu_" + std::to_string(limit) + ".bin");
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_mu_cache(table, path);
    const auto back = read_mu_cache(path);
    const auto mu = table.mu_values();
    if (back.limit != limit || !std::equal(mu.begin(), mu.end(), back.mu.begin(), back.mu.end()))
        throw Error("mu cache round trip failed for " + path.string());
    std::uint64_t squarefree = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) squarefree += table.mu(n) != 0;
    write_table(sink, "sieve", {"limit", "mertens", "squarefree", "cache"},
                {{std::to_string(limit), std::to_string(table.mertens(limit)), std::to_string(squarefree),
                  path.string()}});
    return kOk;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "mobius";
    for (const auto& a : args) s += " " + a;
    return s;
}

}  // namespace

const std::vector<Invocation>& invocations() {
    static const std::vector<Invocation> list = {
        {"easy", {"verify", "--theorem", "easy", "--X", "1..1000", "--q", "1,2,6", "--k", "1,2", "--sigma", "1,1.5"}},
        {"mqeps_lower", {"verify", "--theorem", "mqeps_lower", "--X", "1,2,10.5,100", "--q", "1,6", "--eps", "0,0.5"}},
        {"mqeps", {"verify", "--theorem", "mqeps", "--X", "1,2,10.5,100", "--q", "1,6", "--eps", "0,0.5"}},
        {"mqeps_floor", {"verify", "--theorem", "mqeps_floor", "--X", "1,2,10.5,100", "--q", "1,6", "--eps", "0,0.5"}},
        {"mcheckqeps", {"verify", "--theorem", "mcheckqeps", "--X", "15,100,1000", "--q", "1,6", "--eps", "0,0.1"}},
        {"mqdex", {"verify", "--theorem", "mqdex", "--X", "1,10,100", "--q", "1,6", "--s", "1.5,1+2i"}},
        {"mcheckqdex", {"verify", "--theorem", "mcheckqdex", "--X", "1,10,100", "--q", "1,6", "--s", "1,0.8+5i"}},
        {"special", {"verify", "--theorem", "special", "--X", "15..2000", "--sigma", "1,1.04", "--sweep"}},
        {"integral_abs_mq", {"verify", "--theorem", "integral_abs_mq", "--X", "10,100,1000", "--q", "1,2"}},
        {"y0", {"verify", "--theorem", "y0", "--A", "1e12"}},
        {"update", {"verify", "--theorem", "update", "--X", "617990..650000", "--q", "1", "--sweep"}},
        {"m2_sqrt", {"verify", "--theorem", "m2_sqrt", "--X", "1..100000", "--q", "2", "--sweep"}},
        {"m2_log", {"verify", "--theorem", "m2_log", "--X", "5379..100000", "--q", "2", "--sweep"}},
        {"coprimality", {"verify", "--theorem", "coprimality", "--X", "1..10000", "--q", "1,2,3", "--sweep"}},
        {"basemq", {"verify", "--theorem", "basemq", "--X", "1..10000", "--q", "1,2,6,30", "--sweep"}},
        {"delta_sign", {"delta-sign", "--q", "1", "--X0", "10.8"}},
        {"delta_cap", {"delta-sign", "--q", "1", "--X0", "47", "--cap", "0.014"}},
        {"harmonic", {"harmonic", "--check", "harmonic", "--X-max", "100000"}},
        {"hanson", {"harmonic", "--check", "hanson", "--X-max", "1000000"}},
        {"f_le_g", {"harmonic", "--check", "f_le_g", "--X-max", "100000"}},
        {"stirling_eps", {"harmonic", "--check", "stirling_eps", "--X-max", "100000"}},
        {"second_mean_value", {"harmonic", "--check", "second_mean_value", "--X-max", "100000"}},
        {"neg_alpha", {"harmonic", "--check", "neg_alpha", "--K", "1000000"}},
        {"integral_identity", {"harmonic", "--check", "integral_identity", "--X-max", "2000"}},
    };
    return list;
}

std::vector<std::string> registry_ids() {
    std::vector<std::string> ids = bounds_theorem_ids();
    for (const auto& v : {delta_theorem_ids(), harmonic_theorem_ids()}) ids.insert(ids.end(), v.begin(), v.end());
    return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explicit Mobius sum bounds: sieves, sums, identities and verification suites", "mobius"};
    bool list = false;
    app.add_flag("--list", list, "print one invocation per theorem id");
    app.require_subcommand(0, 1);

    Output o_sieve, o_sum, o_identity, o_verify, o_delta, o_harmonic;

    SieveArgs sv;
    auto* sieve = app.add_subcommand("sieve", "build the sieve and write the mu cache");
    sieve->add_option("--limit", sv.limit, "sieve limit")->required();
    sieve->add_option("--cache", sv.out, "cache file (default $MOBIUS_CACHE_DIR/mu_<limit>.bin)");
    add_output_options(sieve, o_sieve);

    SumArgs sm;
    auto* sum = app.add_subcommand("sum", "evaluate Mobius sums on a grid");
    sum->add_option("--quantity", sm.quantity, "m, mcheck, logpow, psi or mertens");
    sum->add_option("--X", sm.X, "X grid: list or lo..hi[:step]")->required();
    sum->add_option("--q", sm.q, "moduli: list or sqfree-divisors:N");
    sum->add_option("--s", sm.s, "exponents, complex allowed (a+bi)");
    sum->add_option("--k", sm.k, "log powers for logpow");
    sum->add_option("--threads", sm.threads, "worker threads");
    add_output_options(sum, o_sum);

    IdentityArgs id;
    auto* identity = app.add_subcommand("identity", "evaluate catalog identities");
    identity->add_option("--name", id.name, "meissel, elmarraki, macleod, euler_gamma, liouville, daval_general or catalog")
        ->required();
    identity->add_option("--X", id.X, "X grid")->required();
    identity->add_option("--kernel", id.kernel, "kernel h for daval_general: one, two_id or inverse_id");
    identity->add_option("--tolerance", id.tolerance, "tolerance on the raw identity residual");
    add_output_options(identity, o_identity);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a bound over a parameter grid");
    verify->add_option("--theorem", va.theorem, "theorem id (see --list)")->required();
    verify->add_option("--X", va.X, "X grid: list or lo..hi[:step]");
    verify->add_option("--q", va.q, "moduli: list or sqfree-divisors:N");
    verify->add_option("--k", va.k, "log powers");
    verify->add_option("--sigma", va.sigma, "real exponents");
    verify->add_option("--eps", va.eps, "eps values");
    verify->add_option("--s", va.s, "complex exponents");
    verify->add_option("--sigma0", va.sigma0, "lower abscissae (default sigma/2)");
    verify->add_option("--A", va.A, "A values for y0");
    verify->add_option("--limit", va.limit, "sieve limit (default: largest X)");
    verify->add_flag("--sweep", va.sweep, "cover every real X in the range and report the worst row");
    verify->add_option("--threads", va.threads, "worker threads");
    add_output_options(verify, o_verify);

    DeltaArgs da;
    auto* delta = app.add_subcommand("delta-sign", "certify Delta_q(X, eps) <= 0 on [1, X0) x [0, eps_max]");
    delta->add_option("--q", da.q, "moduli");
    delta->add_option("--X0", da.X0, "right end of the X range");
    delta->add_option("--budget", da.budget, "evaluation error budget (>= 1e-9)");
    delta->add_option("--eps-max", da.eps_max, "largest eps covered (default 1)");
    delta->add_option("--cap", da.cap, "scan against this cap instead of certifying");
    delta->add_option("--eps-step", da.eps_step, "eps step of the cap scan");
    delta->add_option("--replay", da.replay, "replay a certificate file");
    delta->add_flag("--report", da.report, "emit report rows instead of certificate JSON");
    delta->add_option("--threads", da.threads, "worker threads");
    add_output_options(delta, o_delta);

    HarmonicArgs ha;
    auto* harmonic = app.add_subcommand("harmonic", "checks around sum Lambda(n)/n <= log X");
    harmonic->add_option("--check", ha.check, "check id (see --list)")->required();
    harmonic->add_option("--X-max", ha.X_max, "largest X");
    harmonic->add_option("--K", ha.K, "partial sum length for neg_alpha");
    harmonic->add_option("--tolerance", ha.tolerance, "tolerance for neg_alpha and integral_identity");
    add_output_options(harmonic, o_harmonic);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "usage error: " << e.what() << "\n" << "run with --help for options\n";
        return kUsage;
    }

    try {
        if (list) {
            for (const auto& inv : invocations()) out << inv.theorem_id << "\t" << join_args(inv.args) << "\n";
            return kOk;
        }
        if (sieve->parsed()) {
            Sink s(o_sieve, out);
            return run_sieve(sv, s);
        }
        if (sum->parsed()) {
            const auto rows = run_sum(sm, err);
            Sink s(o_sum, out);
            write_table(s, "sum", {"quantity", "X", "q", "param", "value", "error"}, rows);
            return kOk;
        }
        if (identity->parsed()) {
            Sink s(o_identity, out);
            return run_identity(id, s, err);
        }
        if (verify->parsed()) {
            const auto rows = run_verify(va, err);
            Sink s(o_verify, out);
            return write_reports(s, "verify", rows);
        }
        if (delta->parsed()) {
            Sink s(o_delta, out);
            return run_delta(da, s, err);
        }
        if (harmonic->parsed()) {
            const auto rows = run_harmonic(ha, err);
            Sink s(o_harmonic, out);
            return write_reports(s, "harmonic", rows);
        }
        err << "usage error: a command is required\n" << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kData;
    } catch (const Error& e) {
        err << "data error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace mobius::cli
