#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/io.hpp"
#include "frobmod/frobcat.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace frobmod;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("frobmod-io-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("algebra files round-trip through the writer and loader") {
    TempDir tmp;
    const char* families[] = {"truncated_polynomial",
                              "group_algebra_elementary_abelian", "field"};
    std::vector<std::vector<std::int64_t>> params = {{3, 3}, {2, 2}, {5}};
    for (std::size_t k = 0; k < 3; ++k) {
        auto pres = builtin_algebra(families[k], params[k]);
        std::string path = tmp.file("alg" + std::to_string(k) + ".json");
        write_algebra_file(path, pres);
        AlgebraPtr loaded = load_algebra(path);
        CHECK(loaded->dim() == pres.dim);
        CHECK(loaded->modulus() == pres.p);
        CHECK(loaded->presentation().structure_constants ==
              pres.structure_constants);
        CHECK(loaded->presentation().unit == pres.unit);
        CHECK(loaded->presentation().frobenius_functional ==
              pres.frobenius_functional);
    }
}

TEST_CASE("module and morphism files round-trip") {
    TempDir tmp;
    auto pres = builtin_algebra("truncated_polynomial", {2, 2});
    std::string alg_path = tmp.file("a2.json");
    write_algebra_file(alg_path, pres);
    AlgebraPtr alg = load_algebra(alg_path);

    ModulePtr j1 = top(ModuleRep::regular(alg)).object;
    std::string mod_path = tmp.file("j1.json");
    write_module_file(mod_path, j1, alg_path);
    // Standalone load resolves the algebra reference itself (a distinct
    // CheckedAlgebra instance), so only shape comparisons apply there.
    ModulePtr standalone = load_module(mod_path);
    CHECK(standalone->dim() == j1->dim());
    ModulePtr loaded = load_module(mod_path, alg);
    CHECK(iso_search(loaded, j1).has_value());

    ModuleHom id = ModuleHom::identity(j1);
    std::string mor_path = tmp.file("id.json");
    write_morphism_file(mor_path, id, alg_path, mod_path, mod_path);
    MorphismFile mf = load_morphism(mor_path);
    CHECK(mf.hom.matrix() == id.matrix());
}

TEST_CASE("parse errors cite the file and the offending part") {
    TempDir tmp;

    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS(load_algebra(tmp.file("nope.json")),
                             doctest::Contains("cannot open"), ParseError);
    }
    SUBCASE("malformed document cites the line") {
        std::string path = tmp.file("broken.json");
        write_text(path, "{\n  \"p\": 2,\n  oops\n}\n");
        CHECK_THROWS_WITH_AS(load_algebra(path), doctest::Contains(":3:"),
                             ParseError);
    }
    SUBCASE("missing field is named") {
        std::string path = tmp.file("nofield.json");
        write_text(path, "{\"p\": 2, \"dim\": 2}\n");
        CHECK_THROWS_WITH_AS(load_algebra(path),
                             doctest::Contains("structure_constants"),
                             ParseError);
    }
    SUBCASE("out-of-range residue is rejected") {
        auto pres = builtin_algebra("truncated_polynomial", {2, 2});
        std::string path = tmp.file("badres.json");
        write_algebra_file(path, pres);
        // Manually corrupt: unit entry 7 is not a residue mod 2.
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        in.close();
        auto pos = text.find("\"unit\"");
        REQUIRE(pos != std::string::npos);
        text.replace(text.find('1', pos), 1, "7");
        write_text(path, text);
        CHECK_THROWS_WITH_AS(load_algebra(path), doctest::Contains("unit"),
                             ParseError);
    }
}

TEST_CASE("validation failures surface as mathematical errors, not parse "
          "errors") {
    TempDir tmp;
    auto pres = builtin_algebra("truncated_polynomial", {2, 2});
    pres.frobenius_functional = {1, 0};
    std::string path = tmp.file("degenerate.json");
    write_algebra_file(path, pres);
    CHECK_THROWS_WITH_AS(load_algebra(path),
                         doctest::Contains("frobenius form degenerate"),
                         ValidationError);
}

TEST_CASE("morphism loading verifies the intertwining property") {
    TempDir tmp;
    auto pres = builtin_algebra("truncated_polynomial", {2, 2});
    std::string alg_path = tmp.file("a2.json");
    write_algebra_file(alg_path, pres);
    AlgebraPtr alg = load_algebra(alg_path);
    ModulePtr reg = ModuleRep::regular(alg);
    std::string mod_path = tmp.file("reg.json");
    write_module_file(mod_path, reg, alg_path);
    // The swap matrix does not commute with the action of x.
    std::string mor_path = tmp.file("swap.json");
    write_text(mor_path, "{\"algebra\": \"" + alg_path +
                             "\", \"source\": \"" + mod_path +
                             "\", \"target\": \"" + mod_path +
                             "\", \"matrix\": [[0,1],[1,0]]}\n");
    CHECK_THROWS_WITH_AS(load_morphism(mor_path),
                         doctest::Contains("morphism"), ParseError);
}

TEST_CASE("algebra references resolve builtins, files and the catalog") {
    TempDir tmp;
    AlgebraPtr b = resolve_algebra("truncated_polynomial(3,3)");
    CHECK(b->dim() == 3);
    CHECK_THROWS_AS(resolve_algebra("truncated_polynomial(x,y)"), ParseError);
    CHECK_THROWS_AS(resolve_algebra("does-not-exist"), ParseError);

    // Catalog resolution through the environment variable.
    auto pres = builtin_algebra("group_algebra_elementary_abelian", {2, 2});
    write_algebra_file(tmp.file("klein.json"), pres);
    ::setenv("FROBMOD_CATALOG", tmp.path.string().c_str(), 1);
    AlgebraPtr fromcat = resolve_algebra("klein");
    CHECK(fromcat->dim() == 4);
    ::unsetenv("FROBMOD_CATALOG");
}
