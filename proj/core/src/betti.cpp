#include "confhom/betti.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace confhom {

HomologyTable cellular_betti(const BettiOptions& opt) {
    std::vector<std::map<int, HomologyEntry>> rows(opt.max_n + 1);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int n = next.fetch_add(1); n <= opt.max_n && !failed.load(); n = next.fetch_add(1)) {
            try {
                ChainSlice slice(opt.genus, n, opt.verify_d_squared);
                rows[n] = slice_homology(slice, opt.ring);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed = true;
                error = e.what();
            }
        }
    };
    int nthreads = std::max(1, std::min(opt.threads, opt.max_n + 1));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed) throw std::runtime_error("cellular_betti: " + error);

    HomologyTable table;
    table.ring = opt.ring;
    table.genus = opt.genus;
    for (int n = 0; n <= opt.max_n; ++n)
        for (const auto& [i, e] : rows[n]) table.entries[{n, i}] = e;
    return table;
}

std::vector<Discrepancy> compare_tables(const HomologyTable& a, const HomologyTable& b,
                                        int max_n) {
    std::vector<Discrepancy> out;
    for (int n = 0; n <= max_n; ++n)
        for (int i = 0; i <= n; ++i) {
            HomologyEntry ea = a.at(n, i), eb = b.at(n, i);
            if (ea == eb) continue;
            std::ostringstream os;
            os << "H_" << i << "(C_" << n << "): " << ea.dim;
            for (i64 t : ea.torsion) os << "+Z/" << t;
            os << " vs " << eb.dim;
            for (i64 t : eb.torsion) os << "+Z/" << t;
            out.push_back({n, i, os.str()});
        }
    return out;
}

}  // namespace confhom
