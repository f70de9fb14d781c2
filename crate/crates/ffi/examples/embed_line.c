/* Build the stable embedding of {0, 1, 3} and print its distances.
 *
 *   cargo build -p tight-embed-ffi --release
 *   cc crates/ffi/examples/embed_line.c -Icrates/ffi/include \
 *      -Ltarget/release -ltight_embed_ffi -o embed_line
 *   LD_LIBRARY_PATH=target/release ./embed_line
 */
#include <stdio.h>
#include "tight_embed.h"

static int fail(const char *what) {
    const char *msg = te_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "unknown error");
    return 1;
}

int main(void) {
    TeSpace *space = NULL;
    TeModulus *rho = NULL, *omega = NULL;
    TeStableEmbedding *emb = NULL;

    if (te_space_from_json("{\"type\":\"matrix\",\"d\":[[0,1,3],[1,0,2],[3,2,0]]}", &space) != TE_STATUS_OK)
        return fail("space");
    if (te_modulus_from_json("{\"family\":\"power_rho\",\"alpha\":0.5}", &rho) != TE_STATUS_OK)
        return fail("rho");
    if (te_modulus_from_json("{\"family\":\"power_omega\",\"alpha\":0.5}", &omega) != TE_STATUS_OK)
        return fail("omega");

    TeStatus status = te_stable_embed(space, 0, rho, omega, &emb);
    if (status != TE_STATUS_OK && status != TE_STATUS_VERIFY_FAILED)
        return fail("embed");

    printf("tight-embed %s, certified: %s\n", te_version(), te_stable_embedding_pass(emb) ? "yes" : "no");
    for (size_t i = 0; i < te_space_len(space); i++) {
        for (size_t j = i + 1; j < te_space_len(space); j++) {
            double d = 0.0;
            te_stable_embedding_distance(emb, i, j, &d);
            printf("  d(%zu,%zu) -> %.6f\n", i, j, d);
        }
    }

    te_stable_embedding_free(emb);
    te_modulus_free(rho);
    te_modulus_free(omega);
    te_space_free(space);
    return status == TE_STATUS_OK ? 0 : 3;
}
