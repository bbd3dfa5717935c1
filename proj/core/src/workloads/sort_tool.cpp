#include "bops/workloads/sort_tool.hpp"

#include <algorithm>
#include <chrono>
#include <new>
#include <thread>
#include <utility>

#include "bops/errors.hpp"
#include "bops/workloads/splitmix64.hpp"

namespace bops::workloads {

void RunConfig::validate() const {
    if (workload == WorkloadKind::Sort && n_elements < 2)
        throw ConfigError("sort needs at least 2 elements");
    if (workload == WorkloadKind::StreamTriad && n_elements < 1)
        throw ConfigError("stream triad needs at least 1 element");
    if (threads < 1) throw ConfigError("threads must be positive");
    if (iterations < 1) throw ConfigError("iterations must be positive");
    if (workload == WorkloadKind::StreamTriad && llc_bytes > 0 &&
        n_elements * 8 < 4 * llc_bytes)
        throw ConfigError("stream triad arrays must exceed the last-level cache 4x: need n >= " +
                          std::to_string(4 * llc_bytes / 8) + " elements");
}

std::string to_string(WorkloadKind kind) {
    return kind == WorkloadKind::Sort ? "sort" : "stream_triad";
}

std::string to_string(RunMode mode) {
    return mode == RunMode::Counting ? "counting" : "timing";
}

namespace {

/// Per-worker operation counters. The template flag compiles every increment
/// out of timing-mode builds; nothing of the instrumentation survives in the
/// hot loops there.
struct OpCounter {
    uint64_t arithmetic = 0;
    uint64_t comparing = 0;
    uint64_t addressing = 0;

    BopsTally tally() const {
        BopsTally t;
        t.add_arithmetic(arithmetic);
        t.add_comparing(comparing);
        t.add_addressing(addressing);
        return t;
    }
};

template <bool Counted>
struct Instr {
    OpCounter c;

    uint64_t load(const uint64_t* a, uint64_t i) {
        if constexpr (Counted) ++c.addressing;
        return a[i];
    }
    void store(uint64_t* a, uint64_t i, uint64_t v) {
        if constexpr (Counted) ++c.addressing;
        a[i] = v;
    }
    /// Key or index comparison.
    bool lt(uint64_t x, uint64_t y) {
        if constexpr (Counted) ++c.comparing;
        return x < y;
    }
    bool lt_i(int64_t x, int64_t y) {
        if constexpr (Counted) ++c.comparing;
        return x < y;
    }
    bool ge_i(int64_t x, int64_t y) {
        if constexpr (Counted) ++c.comparing;
        return x >= y;
    }
    /// Index or pivot arithmetic, n ops at a time.
    void arith(uint64_t n) {
        if constexpr (Counted) c.arithmetic += n;
    }
};

constexpr int64_t kSmallCutoff = 3;

template <bool Counted>
void sort_small(Instr<Counted>& ins, uint64_t* a, int64_t lo, int64_t hi) {
    int64_t n = hi - lo + 1;
    ins.arith(2);
    if (n == 2) {
        uint64_t x = ins.load(a, lo), y = ins.load(a, hi);
        if (ins.lt(y, x)) {
            ins.store(a, lo, y);
            ins.store(a, hi, x);
        }
        return;
    }
    if (n == 3) {
        uint64_t x = ins.load(a, lo), y = ins.load(a, lo + 1), z = ins.load(a, hi);
        ins.arith(1);
        if (ins.lt(y, x)) std::swap(x, y);
        if (ins.lt(z, x)) std::swap(x, z);
        if (ins.lt(z, y)) std::swap(y, z);
        ins.store(a, lo, x);
        ins.store(a, lo + 1, y);
        ins.store(a, hi, z);
    }
}

/// Hoare partition with the median of three as pivot. Ordering the three
/// probes leaves a[lo] <= pivot <= a[hi], so the scans need no index guards.
template <bool Counted>
int64_t partition(Instr<Counted>& ins, uint64_t* a, int64_t lo, int64_t hi) {
    int64_t mid = lo + (hi - lo) / 2;
    ins.arith(3);
    uint64_t vlo = ins.load(a, lo), vmid = ins.load(a, mid), vhi = ins.load(a, hi);
    if (ins.lt(vmid, vlo)) std::swap(vmid, vlo);
    if (ins.lt(vhi, vlo)) std::swap(vhi, vlo);
    if (ins.lt(vhi, vmid)) std::swap(vhi, vmid);
    ins.store(a, lo, vmid);  // pivot to the front
    ins.store(a, mid, vlo);
    ins.store(a, hi, vhi);

    const uint64_t pivot = vmid;
    int64_t i = lo - 1, j = hi + 1;
    ins.arith(2);
    for (;;) {
        do {
            i = i + 1;
            ins.arith(1);
        } while (ins.lt(ins.load(a, i), pivot));
        do {
            j = j - 1;
            ins.arith(1);
        } while (ins.lt(pivot, ins.load(a, j)));
        if (ins.ge_i(i, j)) return j;
        uint64_t x = ins.load(a, i), y = ins.load(a, j);
        ins.store(a, i, y);
        ins.store(a, j, x);
    }
}

template <bool Counted>
void quicksort(Instr<Counted>& ins, uint64_t* a, int64_t lo, int64_t hi) {
    while (ins.lt_i(lo, hi)) {
        ins.arith(1);  // span = hi - lo
        if (hi - lo + 1 <= kSmallCutoff) {
            sort_small(ins, a, lo, hi);
            return;
        }
        int64_t p = partition(ins, a, lo, hi);
        // recurse into the smaller side, iterate on the larger
        ins.arith(2);
        if (ins.lt_i(p - lo, hi - p)) {
            quicksort(ins, a, lo, p);
            lo = p + 1;
            ins.arith(1);
        } else {
            quicksort(ins, a, p + 1, hi);
            hi = p;
            ins.arith(1);
        }
    }
}

/// Merges a[0..n1) and b[0..n2) into out, caching the current head of each
/// run in a scalar so each element is loaded exactly once.
template <bool Counted>
void merge_runs(Instr<Counted>& ins, const uint64_t* a, uint64_t n1, const uint64_t* b,
                uint64_t n2, uint64_t* out) {
    uint64_t i = 0, j = 0, k = 0;
    if (n1 > 0 && n2 > 0) {
        uint64_t va = ins.load(a, 0), vb = ins.load(b, 0);
        for (;;) {
            if (ins.lt(vb, va)) {
                ins.store(out, k, vb);
                k = k + 1;
                j = j + 1;
                ins.arith(2);
                if (ins.lt(j, n2)) {
                    vb = ins.load(b, j);
                } else {
                    ins.store(out, k, va);
                    k = k + 1;
                    i = i + 1;
                    ins.arith(2);
                    break;
                }
            } else {
                ins.store(out, k, va);
                k = k + 1;
                i = i + 1;
                ins.arith(2);
                if (ins.lt(i, n1)) {
                    va = ins.load(a, i);
                } else {
                    ins.store(out, k, vb);
                    k = k + 1;
                    j = j + 1;
                    ins.arith(2);
                    break;
                }
            }
        }
    }
    while (ins.lt(i, n1)) {
        ins.store(out, k, ins.load(a, i));
        k = k + 1;
        i = i + 1;
        ins.arith(2);
    }
    while (ins.lt(j, n2)) {
        ins.store(out, k, ins.load(b, j));
        k = k + 1;
        j = j + 1;
        ins.arith(2);
    }
}

struct Checksum {
    uint64_t sum = 0;  // wrapping
    uint64_t xors = 0;

    void feed(uint64_t v) {
        sum += v;
        xors ^= v;
    }
    bool operator==(const Checksum&) const = default;
};

struct RunSpan {
    uint64_t begin = 0;
    uint64_t size = 0;
};

template <bool Counted>
SortRunResult run_sort_impl(const RunConfig& cfg) {
    const uint64_t n = cfg.n_elements;
    const uint32_t workers = static_cast<uint32_t>(
        std::min<uint64_t>(cfg.threads, n));  // every chunk holds at least one element

    std::vector<uint64_t> data, buffer;
    try {
        data.resize(n);
        buffer.resize(n);
    } catch (const std::bad_alloc&) {
        throw MeasurementError("sort: cannot allocate " + std::to_string(n) + " elements");
    }

    // fixed chunk partitioning: chunk i covers [i*n/workers, (i+1)*n/workers)
    std::vector<RunSpan> runs(workers);
    for (uint32_t t = 0; t < workers; ++t) {
        uint64_t begin = n * t / workers;
        uint64_t end = n * (t + 1) / workers;
        runs[t] = {begin, end - begin};
    }

    // generation: one SplitMix64 stream per chunk, untimed and uncounted
    Checksum input_check;
    {
        std::vector<std::thread> gen;
        gen.reserve(workers);
        for (uint32_t t = 0; t < workers; ++t)
            gen.emplace_back([&, t]() {
                SplitMix64 rng = SplitMix64::stream(cfg.seed, t);
                for (uint64_t k = runs[t].begin; k < runs[t].begin + runs[t].size; ++k)
                    data[k] = rng.next();
            });
        for (auto& th : gen) th.join();
        for (uint64_t k = 0; k < n; ++k) input_check.feed(data[k]);
    }

    std::vector<BopsTally> worker_tallies;

    auto t0 = std::chrono::steady_clock::now();

    // phase 1: sort each chunk in place
    {
        std::vector<Instr<Counted>> instr(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (uint32_t t = 0; t < workers; ++t)
            pool.emplace_back([&, t]() {
                if (runs[t].size >= 2)
                    quicksort(instr[t], data.data(), static_cast<int64_t>(runs[t].begin),
                              static_cast<int64_t>(runs[t].begin + runs[t].size - 1));
            });
        for (auto& th : pool) th.join();
        if constexpr (Counted)
            for (auto& ins : instr) worker_tallies.push_back(ins.c.tally());
    }

    // phase 2: pairwise merge rounds, ping-ponging between the two arrays
    uint64_t* src = data.data();
    uint64_t* dst = buffer.data();
    while (runs.size() > 1) {
        std::vector<RunSpan> next;
        next.reserve((runs.size() + 1) / 2);
        std::vector<Instr<Counted>> instr((runs.size() + 1) / 2);
        std::vector<std::thread> pool;
        for (size_t p = 0; p + 1 < runs.size(); p += 2) {
            RunSpan a = runs[p], b = runs[p + 1];
            next.push_back({a.begin, a.size + b.size});
            pool.emplace_back([&, p, a, b]() {
                merge_runs(instr[p / 2], src + a.begin, a.size, src + b.begin, b.size,
                           dst + a.begin);
            });
        }
        if (runs.size() % 2 == 1) {
            // odd run out: carried over by a counted copy
            RunSpan last = runs.back();
            next.push_back(last);
            pool.emplace_back([&, last]() {
                Instr<Counted>& ins = instr.back();
                const uint64_t* from = src + last.begin;
                uint64_t* to = dst + last.begin;
                uint64_t k = 0;
                while (ins.lt(k, last.size)) {
                    ins.store(to, k, ins.load(from, k));
                    k = k + 1;
                    ins.arith(1);
                }
            });
        }
        for (auto& th : pool) th.join();
        if constexpr (Counted)
            for (auto& ins : instr) worker_tallies.push_back(ins.c.tally());
        std::swap(src, dst);
        runs = std::move(next);
    }

    auto t1 = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(t1 - t0).count();

    // verification: ascending order and multiset checksum, always fatal
    const uint64_t* result = src;
    Checksum output_check;
    output_check.feed(result[0]);
    for (uint64_t k = 1; k < n; ++k) {
        if (result[k] < result[k - 1])
            throw MeasurementError("sort verification failed: output not ascending at index " +
                                   std::to_string(k));
        output_check.feed(result[k]);
    }
    if (!(output_check == input_check))
        throw MeasurementError("sort verification failed: output is not a permutation of input");

    SortRunResult out;
    out.measurement.workload = to_string(WorkloadKind::Sort);
    out.measurement.threads = cfg.threads;
    out.measurement.wall_time_s = elapsed;
    out.measurement.n_elements = cfg.n_elements;
    out.measurement.seed = cfg.seed;
    out.measurement.mode = to_string(cfg.mode);
    if constexpr (Counted) {
        for (const BopsTally& t : worker_tallies) out.measurement.tally.merge(t);
        // every addressing op in this tool is one 8-byte element access
        out.measurement.bytes_accessed =
            static_cast<double>(out.measurement.tally.addressing) * 8.0;
        out.measurement.tally_present = true;
        out.per_worker_tallies = std::move(worker_tallies);
    } else {
        out.measurement.tally_present = false;
        out.measurement.bytes_accessed = 0;
    }
    return out;
}

}  // namespace

SortRunResult run_sort(const RunConfig& cfg) {
    if (cfg.workload != WorkloadKind::Sort) throw ConfigError("run_sort: config is not a sort run");
    cfg.validate();
    if (cfg.mode == RunMode::Counting) return run_sort_impl<true>(cfg);
    return run_sort_impl<false>(cfg);
}

}  // namespace bops::workloads
