#include "support.hpp"

#include "polyflow/structure.hpp"

#include <doctest.h>

using namespace polyflow;
using test::P;
using test::V;

namespace {
RatioMatrix matrix(const std::array<std::array<const char*, 3>, 3>& rows) {
    RatioMatrix g;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) g[i][j] = parse_ratio(rows[i][j]);
    return g;
}
}  // namespace

TEST_CASE("Jacobi identity") {
    CHECK(check_jacobi(V("x", "y", "z")).passed());
    CHECK(check_jacobi(gradient(P("x^2 + y^2 + z"))).passed());
    // oracle: (y, 0, x).curl = -x
    const auto rep = check_jacobi(V("y", "0", "x"));
    CHECK_FALSE(rep.passed());
    CHECK(rep.identities.at(0).residual.at(0) == P("-x"));
}

TEST_CASE("Hamiltonian form") {
    // X = J x grad H with J = (1,0,0), H = y^2/2 + z^2/2 gives (0, -z, y)
    const auto rep = check_hamiltonian(V("0", "-z", "y"), V("1", "0", "0"), P("y^2/2 + z^2/2"));
    CHECK(rep.passed());
    const auto bad = check_hamiltonian(V("0", "z", "y"), V("1", "0", "0"), P("y^2/2 + z^2/2"));
    CHECK_FALSE(bad.passed());
    CHECK(bad.find("X - J x grad H")->residual.at(1) == P("2*z"));
}

TEST_CASE("Nambu form and last multiplier on the Euler top") {
    const auto m = test::corpus_model("euler.model");
    const auto X = bind_field(m, {});
    // oracle: div(M X) = 0 for M = 1/(xyz)
    const Ratio M(P("1"), P("x*y*z"));
    CHECK(check_last_multiplier(X.components(), M).passed());
    CHECK(check_last_multiplier(X.components(), Ratio(1)).passed() == divergence(X.components()).is_zero());
    CHECK_THROWS(check_nambu(X.components(), Ratio(0), P("x"), P("y")));
}

TEST_CASE("divergence failure reports the divergence") {
    const auto X = test::three_wave(0, 1);
    const auto rep = check_last_multiplier(X.components(), Ratio(1));
    CHECK_FALSE(rep.passed());
    CHECK(rep.identities.at(0).residual.at(0) == P("-2"));
}

TEST_CASE("metriplectic: uncorrected three-wave claim fails with the clock mismatch") {
    const auto X = test::three_wave(-1, 1);
    StructureSpec spec;
    spec.kind = ClaimKind::Metriplectic2;
    spec.H1 = P("y*z - z/2");
    spec.H2 = P("x^2 + y^2 + exp(-2*t)*z");
    spec.G = matrix({{{"1/2", "0", "0"}, {"0", "1/2", "0"}, {"0", "0", "2*z*exp(2*t)"}}});
    spec.entropy = Generator::H2;
    spec.lambda = -1;
    const auto rep = check_metriplectic(X.components(), spec);
    CHECK_FALSE(rep.passed());
    // oracle: residual (z e^{-2t} - z, 0, 0)
    const auto& r = rep.find("C + lambda*G grad S - X")->residual;
    CHECK(r.at(0) == P("exp(-2*t)*z - z"));
    CHECK(r.at(1).is_zero());
    CHECK(r.at(2).is_zero());

    spec.H2 = P("x^2 + y^2 + z");
    const auto h2_only = check_metriplectic(X.components(), spec);
    // oracle: (0, 0, 2z - 2z e^{2t})
    CHECK(h2_only.find("C + lambda*G grad S - X")->residual.at(2) == P("2*z - 2*exp(2*t)*z"));

    spec.G = matrix({{{"1/2", "0", "0"}, {"0", "1/2", "0"}, {"0", "0", "2*z"}}});
    CHECK(check_metriplectic(X.components(), spec).passed());
}

TEST_CASE("metriplectic: asymmetric metric is reported") {
    const auto X = test::three_wave(-1, 0);
    StructureSpec spec;
    spec.kind = ClaimKind::Metriplectic2;
    spec.J = V("-2*x", "-2*y", "-1");
    spec.H1 = P("y*z");
    spec.G = matrix({{{"0", "x/z", "0"}, {"x/z", "0", "1"}, {"0", "1", "z/y"}}});
    spec.entropy = Generator::H1;
    CHECK(check_metriplectic(X.components(), spec).passed());
    spec.G->at(0)[1] = parse_ratio("2*x/z");
    const auto rep = check_metriplectic(X.components(), spec);
    CHECK_FALSE(rep.find("G symmetric")->passed());
}

TEST_CASE("metriplectic: denominators are listed as exclusions") {
    const auto m = test::corpus_model("rabinovich.model");
    const auto claim = bind_claim(m, *m.find_claim("metriplectic"), {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}});
    const auto rep = verify_claim(claim);
    CHECK(rep.passed());
    CHECK_FALSE(rep.find("C + lambda*G grad S - X")->excluded.empty());
}

TEST_CASE("kind-1 compatibility identities are diagnostics only") {
    const auto X = test::three_wave(-1, 0);
    StructureSpec spec;
    spec.kind = ClaimKind::Metriplectic1;
    spec.J = V("-2*x", "-2*y", "-1");
    spec.H1 = P("y*z");
    spec.H2 = P("x^2 + y^2 + z");
    spec.G = matrix({{{"0", "x/z", "0"}, {"x/z", "0", "1"}, {"0", "1", "z/y"}}});
    const auto rep = check_metriplectic(X.components(), spec);
    bool any_diag = false;
    for (const auto& id : rep.identities) any_diag |= id.diagnostic;
    CHECK(any_diag);
    CHECK(rep.passed() == rep.find("C + lambda*G grad S - X")->passed());
}

TEST_CASE("structure data validation and kinds") {
    StructureSpec spec;
    spec.kind = ClaimKind::Hamiltonian;
    spec.J = V("1", "0", "0");
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK(parse_claim_kind("nambu") == ClaimKind::Nambu);
    CHECK(to_string(ClaimKind::Metriplectic1) == "metriplectic-1");
    CHECK_THROWS_AS(parse_claim_kind("bogus"), std::invalid_argument);
}

TEST_CASE("report json has stable keys") {
    const auto rep = check_jacobi(V("y", "0", "x"));
    const auto j = rep.to_json();
    CHECK(j.at("status") == "fail");
    CHECK(j.contains("residual"));
    CHECK(j.contains("witness"));
    CHECK(check_jacobi(V("x", "y", "z")).to_json().at("status") == "pass");
    CHECK_FALSE(rep.to_text().empty());
}
