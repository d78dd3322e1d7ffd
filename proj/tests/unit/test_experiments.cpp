#include <svem/error.hpp>
#include <svem/experiments.hpp>
#include <svem/generators.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

using namespace svem;

TEST_SUITE("experiments")
{
    TEST_CASE("shortest round-trip formatting")
    {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(2.0) == "2");
        CHECK(format_double(1e-20) == "1e-20");
        for (double v : {std::numbers::pi, 1.0 / 3.0, 6.02214076e23, -2.5e-308}) {
            CHECK(std::stod(format_double(v)) == v);
        }
    }

    TEST_CASE("CSV layout")
    {
        ErrorRecord a;
        a.level = 3;
        a.h = 0.5;
        a.n_dofs = 42;
        a.err_l2 = 0.25;
        a.err_linf = 0.125;
        a.err_h1 = 1.5;
        ErrorRecord b = a;
        b.level = 4;
        b.h = 0.25;
        b.err_l2 = 0.0625;
        b.err_linf = 0.03125;
        b.err_h1 = 0.75;
        std::vector<ErrorRecord> records{a, b};
        fill_eoc(records);
        const std::string csv = format_csv(records);
        const std::string table = "level,h,n_dofs,err_l2,err_linf,err_h1,eoc_l2,eoc_linf,eoc_h1\n"
                                  "3,0.5,42,0.25,0.125,1.5,,,\n"
                                  "4,0.25,42,0.0625,0.03125,0.75,2,2,1\n";
        REQUIRE(csv.substr(0, table.size()) == table);
        // The least-squares fit may round in the last bit.
        double l2 = 0.0;
        double linf = 0.0;
        double h1 = 0.0;
        REQUIRE(std::sscanf(csv.c_str() + table.size(), "# slope_l2=%lf, slope_linf=%lf, slope_h1=%lf\n", &l2, &linf, &h1) == 3);
        CHECK(std::abs(l2 - 2.0) <= 1e-14);
        CHECK(std::abs(linf - 2.0) <= 1e-14);
        CHECK(std::abs(h1 - 1.0) <= 1e-14);
        CHECK(csv.back() == '\n');
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    }

    TEST_CASE("cylinder levels use the nominal mesh size")
    {
        const auto levels = cylinder_levels(default_cylinder_n_list());
        REQUIRE(levels.size() == 6u);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const int n = 5 * static_cast<int>(i + 1);
            CHECK(levels[i].level == n);
            REQUIRE(levels[i].h.has_value());
            CHECK(std::abs(*levels[i].h - 2.0 * std::sin(std::numbers::pi / (8.0 * n))) <= 1e-14);
        }
        CHECK_THROWS_AS(cylinder_levels({5, 0}), Error);
        CHECK_THROWS_AS(sphere_levels(3, 2), Error);
    }

    TEST_CASE("EOC columns of a short sphere study")
    {
        std::vector<ErrorRecord> seen;
        const auto records = run_convergence(sphere_levels(3, 4), benchmark(BenchmarkName::SphereXY), {},
                                             [&](const ErrorRecord& r) { seen.push_back(r); });
        REQUIRE(records.size() == 2u);
        CHECK(seen.size() == 2u);
        CHECK(records[1].eoc_l2.value() == eoc(records[0].h, records[0].err_l2, records[1].h, records[1].err_l2));
        CHECK(records[1].eoc_h1.value() == eoc(records[0].h, records[0].err_h1, records[1].h, records[1].err_h1));
        CHECK(records[0].h == mesh_size(sphere_hybrid(3)));
    }

    TEST_CASE("failing level is identified and earlier rows survive")
    {
        std::vector<LevelSpec> levels = sphere_levels(1, 2);
        levels.push_back({7, std::nullopt, [] { return cylinder_pasted(1); }});
        std::vector<ErrorRecord> seen;
        try {
            run_convergence(levels, benchmark(BenchmarkName::SphereXY), {},
                            [&](const ErrorRecord& r) { seen.push_back(r); });
            FAIL("expected ConstraintMismatch");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConstraintMismatch);
            CHECK(std::string(e.what()).rfind("level 7: ", 0) == 0);
        }
        CHECK(seen.size() == 2u);
    }

    TEST_CASE("convergence output is deterministic")
    {
        const auto problem = benchmark(BenchmarkName::CylinderExp);
        const auto a = format_csv(run_convergence(cylinder_levels({2, 4}), problem));
        const auto b = format_csv(run_convergence(cylinder_levels({2, 4}), problem, {3, SolverKind::Direct}));
        CHECK(a == b);
    }

    TEST_CASE("legacy VTK layout")
    {
        const auto mesh = cylinder_pasted(1);
        std::ostringstream out;
        const Eigen::VectorXd field = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(mesh.n_vertices()), 0, 1);
        write_vtk(out, mesh, {{"u_h", field}, {"error", field}}, "test");
        const std::string s = out.str();
        CHECK(s.rfind("# vtk DataFile Version 3.0\ntest\nASCII\nDATASET POLYDATA\n", 0) == 0);
        CHECK(s.find("POINTS " + std::to_string(mesh.n_vertices()) + " double\n") != std::string::npos);
        // N = 1: 10 faces, 8 quads and 2 pentagons.
        CHECK(s.find("POLYGONS 10 " + std::to_string(8 * 5 + 2 * 6) + "\n") != std::string::npos);
        CHECK(s.find("POINT_DATA " + std::to_string(mesh.n_vertices()) + "\n") != std::string::npos);
        CHECK(s.find("SCALARS u_h double 1\nLOOKUP_TABLE default\n") != std::string::npos);
        CHECK(s.find("SCALARS error double 1\n") != std::string::npos);
        CHECK_THROWS_AS(write_vtk(out, mesh, {{"bad", Eigen::VectorXd::Zero(2)}}), Error);
    }
}
