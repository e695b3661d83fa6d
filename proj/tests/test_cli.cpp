#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = rgcli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    args.push_back("--no-timing");
    Run r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

std::vector<std::vector<std::string>> corpus() {
    std::ifstream f(std::string(RG_CORPUS_DIR) + "/invocations.json");
    return json::parse(f).get<std::vector<std::vector<std::string>>>();
}

}  // namespace

TEST_CASE("solve examples") {
    json j = run_json({"solve", "--rho", "x^2-1"});
    CHECK(j["schema"] == "riccati-galois/1");
    CHECK(j["verdict"]["kovacic_case"] == 1);
    CHECK(j["artifacts"]["omega"] == "-x");

    CHECK(run_json({"solve", "--rho", "x"})["verdict"]["kovacic_case"] == 4);
    CHECK(run_json({"solve", "--rho", "x^3+1"})["verdict"]["status"] == "not-integrable");

    j = run_json({"solve", "--b1", "1/x", "--b0", "(x^2-1/4)/x^2"});
    CHECK(j["verdict"]["kovacic_case"] == 1);
    CHECK(j["artifacts"]["r"] == "-1");

    j = run_json({"solve", "a0=x; a1=0; a2=-1"});
    CHECK(j["artifacts"].contains("substitution"));
}

TEST_CASE("stdin and parameters") {
    Run r = run({"solve", "-", "--json", "--no-timing"}, "rho=x^2-1\n");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["artifacts"]["omega"] == "-x");

    json j = run_json({"solve", "--param", "k=1/3", "--param", "m=2*k", "--rho", "1/4 - k/x + (4*m^2-1)/(4*x^2)"});
    CHECK(j["input"]["params"]["m"] == "2/3");
}

TEST_CASE("criteria, darboux and apply examples") {
    CHECK(run_json({"criteria", "bessel", "--n", "1/2"})["verdict"]["status"] == "integrable");
    CHECK(run_json({"criteria", "bessel", "--n", "1", "--confirm"})["verdict"]["kovacic_case"] == 4);
    json k = run_json({"criteria", "kimura", "--l", "1/2", "--m", "1/2", "--n", "1/5"});
    CHECK(k["verdict"]["condition"] == "row 1");
    json lame = run_json({"criteria", "lame", "--n", "3/2", "--B", "0", "--g2", "1", "--g3", "0"});
    CHECK(lame["verdict"]["label"].get<std::string>().rfind("(ii)", 0) == 0);
    CHECK(lame["verdict"]["detail"].get<std::string>().find("undetermined") != std::string::npos);

    json d = run_json({"darboux", "1; x^2-1-w^2", "--fiber", "w", "--curve", "-w-x", "--exp-int", "x"});
    CHECK(d["artifacts"]["integrating_factor"]["lambda"] == json::array({"-2"}));
    CHECK(d["artifacts"]["integrating_factor"]["lambda_exp"] == json::array({"2"}));
    d = run_json({"darboux", "1; x^2-1-w^2", "--fiber", "w", "--curve", "w"});
    CHECK(d["artifacts"]["curves"][0]["invariant"] == false);
    d = run_json({"darboux", "y; x^3"});
    CHECK(d["artifacts"]["divergence"] == "0");
    CHECK(d["verdict"]["status"] == "inconclusive");

    CHECK(run_json({"apply", "s1", "--b11", "1"})["verdict"]["a1"] == true);
    CHECK(run_json({"apply", "s2", "--b02", "1"})["verdict"]["label"] == "Bernoulli");
    json l = run_json({"apply", "lienard1", "--a", "0", "--b", "1", "--c", "1", "--m", "1", "--k", "1"});
    CHECK(l["verdict"]["condition"] == "clause (1)");
    json ab = run_json({"apply", "abel", "--a", "1", "--b", "2", "--c", "1", "--alpha", "1"});
    CHECK(ab["verdict"]["status"] == "not-integrable");
    json ex = run_json({"apply", "examples"});
    CHECK(ex["artifacts"]["examples"].size() == 8);
}

TEST_CASE("exit codes") {
    CHECK(run({"solve", "--rho", "x^"}).code == rgcli::Syntax);
    CHECK(run({"solve", "--rho", "k*x"}).code == rgcli::Syntax);
    CHECK(run({"nonsense"}).code == rgcli::Syntax);
    CHECK(run({"solve", "--rho", "sqrt(2)+sqrt(3)+sqrt(5)", "--tower-depth", "2"}).code == rgcli::UnsupportedField);
    CHECK(run({"apply", "s1", "--b11", "2", "--b20", "1", "--b02", "1"}).code == rgcli::Failure);
    CHECK(run({"apply", "lienard1", "--m", "0"}).code == rgcli::Failure);
    CHECK(run({"criteria", "whittaker", "--kappa", "1"}).code == rgcli::Failure);
    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("reports are deterministic and the text form is a function of the JSON") {
    for (auto args : corpus()) {
        CAPTURE(args.front());
        auto with = [&](std::initializer_list<const char*> extra) {
            auto a = args;
            a.insert(a.end(), extra.begin(), extra.end());
            return run(a);
        };
        Run j1 = with({"--json", "--no-timing"}), j2 = with({"--json", "--no-timing"});
        REQUIRE(j1.code == 0);
        CHECK(j1.out == j2.out);
        Run t = with({"--no-timing"});
        CHECK(t.out == rgcli::render_text(json::parse(j1.out)));
        json timed = json::parse(with({"--json"}).out);
        CHECK(timed.contains("timing"));
        timed.erase("timing");
        CHECK(timed == json::parse(j1.out));
    }
}
