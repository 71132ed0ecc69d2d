#ifndef MAFEM_PARALLEL_HPP
#define MAFEM_PARALLEL_HPP

#include <thread>
#include <vector>

namespace mafem {

/// Runs fn(chunk_index, begin, end) over a contiguous partition of [0, n).
/// Chunk boundaries depend only on (n, threads), so reductions that merge
/// chunk results in chunk order are deterministic.
template <class Fn>
void parallel_chunks(int n, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  const int nchunks = std::min(threads, n > 0 ? n : 1);
  if (nchunks <= 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (int t = 0; t < nchunks; ++t) {
    const int begin = static_cast<int>(static_cast<long long>(n) * t / nchunks);
    const int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / nchunks);
    pool.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mafem

#endif
