#include <stdio.h>
#include <string.h>
#include "sigma_artin.h"

int main(void) {
    const char *doc = "{\"vertices\":[\"b1\",\"b2\",\"b3\"],"
                      "\"edges\":[{\"u\":\"b1\",\"v\":\"b2\",\"label\":4},{\"u\":\"b2\",\"v\":\"b3\",\"label\":3},"
                      "{\"u\":\"b1\",\"v\":\"b3\",\"label\":2}],"
                      "\"character\":{\"b1\":2,\"b2\":-1,\"b3\":-1}}";
    SaProblem *p = NULL;
    if (sa_problem_from_json(doc, &p) != SA_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", sa_last_error());
        return 1;
    }
    SaAnswer a1, a2;
    if (sa_sigma_verdict(p, 1, true, &a1) != SA_STATUS_OK || sa_sigma_verdict(p, 2, true, &a2) != SA_STATUS_OK) {
        return 2;
    }
    char *json = NULL;
    if (sa_report_json(p, 2, &json) != SA_STATUS_OK || strstr(json, "\"verdicts\"") == NULL) {
        return 3;
    }
    sa_string_free(json);
    sa_problem_destroy(p);
    if (sa_problem_from_json("{\"vertices\":[\"a\"]}", &p) != SA_STATUS_VALIDATION || p != NULL) {
        return 4;
    }
    printf("sigma1=%d sigma2=%d\n", (int)a1, (int)a2);
    return (a1 == SA_ANSWER_IN && a2 == SA_ANSWER_OUT) ? 0 : 5;
}
