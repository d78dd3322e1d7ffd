#include <svem/error.hpp>
#include <svem/generators.hpp>
#include <svem/mesh_io.hpp>

#include <doctest.h>

#include <sstream>

using namespace svem;

TEST_SUITE("mesh_io")
{
    TEST_CASE("OFF round trip is exact")
    {
        const auto mesh = cylinder_pasted(2);
        std::stringstream buf;
        write_off(buf, mesh);
        const auto back = read_off(buf);
        REQUIRE(back.n_vertices() == mesh.n_vertices());
        REQUIRE(back.n_faces() == mesh.n_faces());
        for (std::size_t i = 0; i < mesh.n_vertices(); ++i) CHECK(back.vertices[i] == mesh.vertices[i]);
        CHECK(back.faces == mesh.faces);
        CHECK(back.boundary == mesh.boundary);

        std::stringstream again;
        write_off(again, back);
        std::stringstream first;
        write_off(first, mesh);
        CHECK(again.str() == first.str());
    }

    TEST_CASE("comments and blank lines are skipped")
    {
        std::istringstream in("# header comment\nOFF\n\n3 1 0\n0 0 0\n# between\n1 0 0\n0 1 0\n3 0 1 2\n");
        const auto mesh = read_off(in);
        CHECK(mesh.n_vertices() == 3u);
        REQUIRE(mesh.n_faces() == 1u);
        CHECK(mesh.faces[0] == Face{0, 1, 2});
    }

    TEST_CASE("malformed files raise IoError")
    {
        for (const char* text : {"OFF\n3 1 0\n0 0 0\n1 0 0\n", "PLY\n", "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n",
                                 "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2\n"}) {
            std::istringstream in(text);
            try {
                read_off(in);
                FAIL("expected IoError for: " << text);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::IoError);
            }
        }
        CHECK_THROWS_AS(read_off_file("/nonexistent/dir/mesh.off"), Error);
    }
}
