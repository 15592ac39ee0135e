// Kernel benchmark: each parallel kernel against its serial reference.
// Pool construction, corpus assembly and the multilayer build are exact
// kernels (identical output at any thread count); training compares the
// deterministic sequential path against the hogwild one.

#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multiwalk/embed.hpp"
#include "multiwalk/multiwalk.hpp"
#include "multiwalk/rng.hpp"
#include "multiwalk/structwalk.hpp"
#include "multiwalk/synthetic.hpp"
#include "multiwalk/walkgen.hpp"

using namespace multiwalk;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

void set_threads(int t) {
#ifdef _OPENMP
    omp_set_num_threads(t);
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct Row {
    const char* name;
    double serial;
    double parallel;
};

void print_row(const Row& r) {
    std::printf("%-24s %10.3fs %10.3fs %8.2fx\n", r.name, r.serial, r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0);
}

template <typename F>
double timed(int threads, F&& f) {
    set_threads(threads);
    const double t0 = now();
    f();
    return now() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    int n = 400;
    int m = 3200;
    if (argc > 1) n = std::stoi(argv[1]);
    if (argc > 2) m = std::stoi(argv[2]);
    const int nt = max_threads();
    std::printf("benchmark graph: %d nodes, %d edges; %d threads vs 1\n\n", n, m, nt);

    const Graph g = synthetic::airports_like(n, m, 7);
    UniformWalkGenerator uniform_gen(80);

    std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        WalkPool p;
        Row r{"uniform pool (30x80)", 0, 0};
        r.serial = timed(1, [&] { p = build_pool(g, uniform_gen, 30, 80, 1); });
        r.parallel = timed(nt, [&] { p = build_pool(g, uniform_gen, 30, 80, 1); });
        print_row(r);
    }

    MultilayerGraph ml;
    {
        const int k_max = default_k_max(g);
        Row r{"multilayer build", 0, 0};
        r.serial = timed(1, [&] { ml = build_multilayer(g, k_max); });
        r.parallel = timed(nt, [&] { ml = build_multilayer(g, k_max); });
        print_row(r);
    }

    StructuralWalkGenerator struct_gen(ml, 0.7, 80);
    {
        WalkPool p;
        Row r{"structural pool (30x80)", 0, 0};
        r.serial = timed(1, [&] { p = build_pool(g, struct_gen, 30, 80, 2); });
        r.parallel = timed(nt, [&] { p = build_pool(g, struct_gen, 30, 80, 2); });
        print_row(r);
    }

    WalkCorpus corpus;
    {
        WalkPlan plan;
        plan.entries.push_back({&uniform_gen, 10, 80});
        Row r{"corpus (10 walks/node)", 0, 0};
        r.serial = timed(1, [&] { corpus = generate_corpus(g, plan, 3); });
        r.parallel = timed(nt, [&] { corpus = generate_corpus(g, plan, 3); });
        print_row(r);
    }

    {
        SkipGramParams sg;
        sg.dimension = 64;
        sg.epochs = 2;
        sg.seed = 4;
        Row r{"sgns train (d=64, i=2)", 0, 0};
        sg.threads = 1;
        r.serial = timed(1, [&] { train(corpus, sg); });
        sg.threads = nt;
        r.parallel = timed(nt, [&] { train(corpus, sg); });
        print_row(r);
        std::printf("\nnote: the training row compares the deterministic sequential\n"
                    "trainer with the hogwild one; outputs differ by design.\n");
    }
    return 0;
}
