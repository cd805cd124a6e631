#include "zsum/search.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>
#include <thread>

#include "zsum/reach_table.hpp"

namespace zsum {

namespace {

using Clock = std::chrono::steady_clock;
using Path = std::vector<std::uint32_t>;

constexpr Int kUnbounded = std::numeric_limits<Int>::max() / 4;

/// a precedes b in DFS preorder (lexicographic with prefixes first).
bool preorder_less(const Path& a, const Path& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Task {
  Path prefix;
  std::vector<Word> table;
  std::vector<std::uint32_t> candidates;  // addable elements >= prefix.back()
  std::vector<Int> copies_left;           // per element, admissible
};

struct Frame {
  std::vector<std::uint32_t> elems;
  std::vector<Word> tables;
  std::vector<Int> copies_left;
  std::size_t next = 0;
  std::size_t end = 0;
  bool owns_path_slot = true;
};

class Search {
 public:
  Search(const ReachContext& ctx, const SearchLimits& limits)
      : ctx_(ctx), limits_(limits), tw_(ctx.table_words()), start_(Clock::now()) {
    cap_len_ = limits.upper_bound ? *limits.upper_bound - 1 : kUnbounded;
  }

  SearchOutcome run() {
    seed_root();
    unsigned workers = std::max(1u, limits_.workers);
    if (workers == 1) {
      worker_loop();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < workers; ++i) pool.emplace_back([this] { worker_loop(); });
      for (auto& t : pool) t.join();
    }
    SearchOutcome out;
    out.max_length = static_cast<Int>(best_path_.size());
    out.witness = Sequence(ctx_.group());
    for (auto e : best_path_) out.witness.add(e);
    out.nodes_expanded = nodes_.load();
    out.wall_time = Clock::now() - start_;
    out.exact = !budget_hit_.load();
    out.capped = capped_.load();
    return out;
  }

 private:
  void seed_root() {
    nodes_.fetch_add(1);
    std::vector<Word> empty(tw_, 0);
    const auto n = ctx_.group_size();
    // Root bound: most copies of e alone that stay free.
    root_copies_.assign(n, 0);
    std::vector<Word> cur(tw_), nxt(tw_);
    for (std::uint32_t e = 0; e < n; ++e) {
      std::fill(cur.begin(), cur.end(), 0);
      Int k = 0;
      while (true) {
        ctx_.step(cur.data(), nxt.data(), e);
        if (ctx_.forbidden(nxt.data())) break;
        if (nxt == cur) {
          k = kUnbounded;
          break;
        }
        cur.swap(nxt);
        ++k;
        if (k > cap_len_) break;
      }
      root_copies_[e] = k;
    }
    std::vector<std::uint32_t> cands;
    for (std::uint32_t e = 0; e < n; ++e)
      if (root_copies_[e] > 0) cands.push_back(e);
    // One task per first element choice.
    for (std::size_t i = 0; i < cands.size(); ++i) {
      Task t;
      t.prefix = {cands[i]};
      t.table.assign(tw_, 0);
      ctx_.step(empty.data(), t.table.data(), cands[i]);
      t.candidates.assign(cands.begin() + static_cast<std::ptrdiff_t>(i), cands.end());
      t.copies_left = root_copies_;
      t.copies_left[cands[i]] -= 1;
      queue_.push_back(std::move(t));
    }
  }

  void worker_loop() {
    while (true) {
      Task task;
      {
        std::unique_lock lock(mu_);
        ++idle_;
        cv_.notify_all();
        cv_.wait(lock, [this] { return !queue_.empty() || idle_ == active_workers() || stop_.load(); });
        if (queue_.empty() || stop_.load()) {
          cv_.notify_all();
          return;
        }
        --idle_;
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      run_task(std::move(task));
    }
  }

  unsigned active_workers() const { return std::max(1u, limits_.workers); }

  bool cap_excludes(const Path& path) {
    if (!capped_.load(std::memory_order_relaxed)) return false;
    std::lock_guard lock(result_mu_);
    return preorder_less(best_path_, path);
  }

  bool over_budget() {
    if (limits_.max_nodes && nodes_.load(std::memory_order_relaxed) > limits_.max_nodes) return true;
    if (limits_.max_seconds > 0) {
      std::chrono::duration<double> dt = Clock::now() - start_;
      if (dt.count() > limits_.max_seconds) return true;
    }
    return false;
  }

  void report(const Path& path) {
    std::lock_guard lock(result_mu_);
    if (path.size() > best_path_.size() ||
        (path.size() == best_path_.size() && preorder_less(path, best_path_))) {
      best_path_ = path;
      Int len = static_cast<Int>(path.size());
      Int cur = global_best_.load();
      while (len > cur && !global_best_.compare_exchange_weak(cur, len)) {
      }
      if (len >= cap_len_) capped_.store(true);
    }
  }

  // Expands the node at the end of `path` into frames[top] and returns true
  // when it has children worth visiting.
  bool expand(const Word* table, const std::uint32_t* cands, std::size_t n_cands, const std::vector<Int>& parent_copies,
              std::int64_t chosen, const Path& path, Int& local_best, Frame& f) {
    const Int depth = static_cast<Int>(path.size());
    if (depth > local_best) {
      local_best = depth;
      report(path);
    }
    f.copies_left = parent_copies;
    if (chosen >= 0) f.copies_left[static_cast<std::size_t>(chosen)] -= 1;
    f.elems.clear();
    f.tables.resize(n_cands * tw_);
    f.next = 0;
    Int bound = depth;
    for (std::size_t i = 0; i < n_cands; ++i) {
      std::uint32_t e = cands[i];
      if (f.copies_left[e] <= 0) continue;
      Word* dst = f.tables.data() + f.elems.size() * tw_;
      ctx_.step(table, dst, e);
      if (ctx_.forbidden(dst)) continue;
      f.elems.push_back(e);
      bound = std::min(kUnbounded, bound + f.copies_left[e]);
    }
    f.end = f.elems.size();
    if (f.elems.empty()) return false;
    return !(bound <= local_best || bound < global_best_.load(std::memory_order_relaxed));
  }

  // Frame `level` belongs to the node path[0 .. base_depth + level).
  void donate(std::vector<Frame>& frames, std::size_t top, const Path& path, std::size_t base_depth) {
    for (std::size_t level = 0; level <= top; ++level) {
      Frame& f = frames[level];
      if (f.next >= f.end) continue;
      Path owner(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(base_depth + level));
      std::vector<Task> handed;
      for (std::size_t i = f.next; i < f.end; ++i) {
        Task t;
        t.prefix = owner;
        t.prefix.push_back(f.elems[i]);
        t.table.assign(f.tables.begin() + static_cast<std::ptrdiff_t>(i * tw_),
                       f.tables.begin() + static_cast<std::ptrdiff_t>((i + 1) * tw_));
        t.candidates.assign(f.elems.begin() + static_cast<std::ptrdiff_t>(i),
                            f.elems.begin() + static_cast<std::ptrdiff_t>(f.end));
        t.copies_left = f.copies_left;
        t.copies_left[f.elems[i]] -= 1;
        handed.push_back(std::move(t));
      }
      f.end = f.next;
      std::lock_guard lock(mu_);
      for (auto& t : handed) queue_.push_back(std::move(t));
      cv_.notify_all();
      return;
    }
  }

  void run_task(Task task) {
    Path path = task.prefix;
    if (stop_.load() || cap_excludes(path)) return;
    const std::size_t base_depth = path.size();
    Int local_best = -1;
    std::uint64_t task_nodes = 0;
    std::vector<Frame> frames(8);
    nodes_.fetch_add(1, std::memory_order_relaxed);
    // Task copies_left already accounts for the prefix's last element.
    if (!expand(task.table.data(), task.candidates.data(), task.candidates.size(), task.copies_left, -1, path,
                local_best, frames[0]))
      return;
    std::size_t top = 0;
    while (true) {
      Frame& f = frames[top];
      if (f.next >= f.end) {
        if (top == 0) return;
        --top;
        path.pop_back();
        continue;
      }
      const std::size_t i = f.next++;
      const std::uint32_t e = f.elems[i];
      path.push_back(e);
      ++task_nodes;
      const std::uint64_t total = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
      if ((total & 1023u) == 0) {
        if (over_budget()) {
          budget_hit_.store(true);
          stop_.store(true);
          std::lock_guard lock(mu_);
          cv_.notify_all();
        }
        if (cap_excludes(path)) return;
      }
      if (stop_.load(std::memory_order_relaxed)) return;
      if (local_best >= cap_len_) return;
      if (frames.size() <= top + 1) frames.resize(frames.size() * 2);
      Frame& parent = frames[top];
      Frame& child = frames[top + 1];
      if (expand(parent.tables.data() + i * tw_, parent.elems.data() + i, parent.end - i, parent.copies_left,
                 static_cast<std::int64_t>(e), path, local_best, child)) {
        ++top;
      } else {
        path.pop_back();
      }
      if (local_best >= cap_len_) return;
      if (limits_.workers > 1 && task_nodes > limits_.split_threshold) {
        task_nodes = 0;
        bool hungry;
        {
          std::lock_guard lock(mu_);
          hungry = queue_.empty() && idle_ > 0;
        }
        if (hungry) donate(frames, top, path, base_depth);
      }
    }
  }

  const ReachContext& ctx_;
  SearchLimits limits_;
  std::size_t tw_;
  Clock::time_point start_;
  Int cap_len_;
  std::vector<Int> root_copies_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Task> queue_;
  unsigned idle_ = 0;

  std::mutex result_mu_;
  Path best_path_;
  std::atomic<Int> global_best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::atomic<bool> budget_hit_{false};
  std::atomic<bool> capped_{false};
};

}  // namespace

void check_finite(const GroupSpec& g, const LengthSet& lengths) {
  if (!lengths.meets_multiples_of(g.exponent()))
    throw InfiniteInvariant("s_L(G) is infinite: L = " + lengths.to_string() + " contains no multiple of exp(G) = " +
                            std::to_string(g.exponent()));
}

SearchOutcome max_extremal(const GroupSpec& g, const LengthSet& lengths, const SearchLimits& limits) {
  check_finite(g, lengths);
  auto ctx = ReachContext::get(g, lengths);
  Search search(*ctx, limits);
  return search.run();
}

}  // namespace zsum
